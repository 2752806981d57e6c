#include "dappnet/charts.hpp"

#include "dappnet/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dappnet {

namespace {

constexpr double kWidth = 520;
constexpr double kHeight = 340;
constexpr double kLeft = 64;
constexpr double kRight = 20;
constexpr double kTop = 34;
constexpr double kBottom = 48;

const char* const kPalette[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e"};
constexpr const char* kRandomColor = "#ff7f0e";
constexpr const char* kTargetedColor = "#7b3294";

std::string num(double v)
{
    return format_fixed(v, 2);
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Linear or log10 axis mapped onto a pixel range.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;
    double p0 = 0.0;
    double p1 = 1.0;

    double map(double v) const
    {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        if (b == a)
            return (p0 + p1) / 2.0;
        return p0 + (x - a) / (b - a) * (p1 - p0);
    }

    std::vector<double> ticks() const
    {
        std::vector<double> t;
        if (log) {
            for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); d += 1.0) {
                const double v = std::pow(10.0, d);
                if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9))
                    t.push_back(v);
            }
            return t;
        }
        for (int i = 0; i <= 4; ++i)
            t.push_back(lo + (hi - lo) * i / 4.0);
        return t;
    }
};

class Svg {
public:
    Svg(const std::string& title, const std::string& xlabel, const std::string& ylabel)
    {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
             << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
             << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
             << escape(title) << "</text>\n"
             << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 8)
             << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n"
             << "<text x=\"14\" y=\"" << num((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
             << num((kTop + kHeight - kBottom) / 2) << ")\">" << escape(ylabel) << "</text>\n";
    }

    static Axis x_axis(double lo, double hi, bool log = false) { return {lo, hi, log, kLeft, kWidth - kRight}; }
    static Axis y_axis(double lo, double hi, bool log = false) { return {lo, hi, log, kHeight - kBottom, kTop}; }

    void frame(const Axis& x, const Axis& y, bool x_ticks = true)
    {
        out_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
             << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
        if (x_ticks) {
            for (double t : x.ticks()) {
                const double px = x.map(t);
                out_ << "<line x1=\"" << num(px) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\"" << num(px)
                     << "\" y2=\"" << num(kHeight - kBottom + 4) << "\" stroke=\"black\"/>\n"
                     << "<text x=\"" << num(px) << "\" y=\"" << num(kHeight - kBottom + 16)
                     << "\" text-anchor=\"middle\">" << tick_label(t, x.log) << "</text>\n";
            }
        }
        for (double t : y.ticks()) {
            const double py = y.map(t);
            out_ << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft)
                 << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n"
                 << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
                 << tick_label(t, y.log) << "</text>\n";
        }
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  const std::string& extra = "")
    {
        if (pts.empty())
            return;
        out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << extra << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
        out_ << "\"/>\n";
    }

    void dot(double x, double y, const std::string& color)
    {
        out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }

    void square(double x, double y, const std::string& color)
    {
        out_ << "<rect class=\"real\" x=\"" << num(x - 4) << "\" y=\"" << num(y - 4)
             << "\" width=\"8\" height=\"8\" fill=\"" << color << "\"/>\n";
    }

    void cross(double x, double y, const std::string& color, const std::string& cls)
    {
        out_ << "<g class=\"" << cls << "\" stroke=\"" << color << "\" stroke-width=\"2\">"
             << "<line x1=\"" << num(x - 5) << "\" y1=\"" << num(y - 5) << "\" x2=\"" << num(x + 5) << "\" y2=\""
             << num(y + 5) << "\"/>"
             << "<line x1=\"" << num(x - 5) << "\" y1=\"" << num(y + 5) << "\" x2=\"" << num(x + 5) << "\" y2=\""
             << num(y - 5) << "\"/></g>\n";
    }

    void bar(double x0, double x1, double y0, double y1, const std::string& color)
    {
        out_ << "<rect x=\"" << num(std::min(x0, x1)) << "\" y=\"" << num(std::min(y0, y1)) << "\" width=\""
             << num(std::abs(x1 - x0)) << "\" height=\"" << num(std::abs(y1 - y0)) << "\" fill=\"" << color
             << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, const std::string& anchor = "middle",
              const std::string& extra = "")
    {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\"" << extra
             << ">" << escape(s) << "</text>\n";
    }

    void legend(std::size_t row, const std::string& label, const std::string& color)
    {
        const double y = kTop + 12 + 14 * static_cast<double>(row);
        const double x = kWidth - kRight - 130;
        out_ << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(x + 16) << "\" y2=\""
             << num(y - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        text(x + 20, y, label, "start");
    }

    std::string finish()
    {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    static std::string tick_label(double v, bool log)
    {
        if (log)
            return format_number(v);
        return std::abs(v) >= 100 ? format_fixed(v, 0) : format_fixed(v, 2);
    }

    std::ostringstream out_;
};

const char* color(std::size_t i)
{
    return kPalette[i % (sizeof kPalette / sizeof *kPalette)];
}

std::string degree_pdf(const ChartData& d)
{
    double kmin = 0, kmax = 0, pmin = 1, pmax = 0;
    bool first = true;
    for (const auto& [name, hist] : d.degree_histograms) {
        std::size_t n = 0;
        for (const auto& [k, c] : hist)
            n += c;
        for (const auto& [k, c] : hist) {
            if (k == 0 || c == 0)
                continue;
            const double p = static_cast<double>(c) / static_cast<double>(n);
            if (first) {
                kmin = kmax = static_cast<double>(k);
                first = false;
            }
            kmin = std::min(kmin, static_cast<double>(k));
            kmax = std::max(kmax, static_cast<double>(k));
            pmin = std::min(pmin, p);
            pmax = std::max(pmax, p);
        }
    }
    if (first) {
        kmin = 1;
        kmax = 10;
        pmin = 0.1;
        pmax = 1;
    }
    Svg svg(d.title + " degree distribution", "degree k", "P(k)");
    const Axis x = Svg::x_axis(std::max(1.0, kmin), std::max(kmax, kmin * 10), true);
    const Axis y = Svg::y_axis(std::pow(10.0, std::floor(std::log10(pmin))), 1.0, true);
    svg.frame(x, y);
    std::size_t row = 0;
    for (std::size_t i = 0; i < d.degree_histograms.size(); ++i) {
        const auto& [name, hist] = d.degree_histograms[i];
        std::size_t n = 0;
        for (const auto& [k, c] : hist)
            n += c;
        std::vector<std::pair<double, double>> pts;
        for (const auto& [k, c] : hist) {
            if (k == 0 || c == 0)
                continue;
            const double p = static_cast<double>(c) / static_cast<double>(n);
            pts.push_back({x.map(static_cast<double>(k)), y.map(p)});
        }
        svg.polyline(pts, color(i));
        for (const auto& [px, py] : pts)
            svg.dot(px, py, color(i));
        if (d.degree_histograms.size() <= 10)
            svg.legend(row++, name, color(i));
    }
    return svg.finish();
}

std::string density_pdf(const ChartData& d)
{
    constexpr std::size_t kBins = 10;
    const double hi = std::max(1e-9, *std::max_element(d.densities.begin(), d.densities.end()));
    const double width = hi / kBins;
    std::vector<double> pdf(kBins, 0.0);
    for (double v : d.densities) {
        auto b = static_cast<std::size_t>(v / width);
        pdf[std::min(b, kBins - 1)] += 1.0;
    }
    for (double& p : pdf)
        p /= static_cast<double>(d.densities.size()) * width;
    Svg svg(d.title + " density distribution", "density", "PDF");
    const Axis x = Svg::x_axis(0.0, hi);
    const Axis y = Svg::y_axis(0.0, std::max(1e-9, *std::max_element(pdf.begin(), pdf.end())));
    svg.frame(x, y);
    for (std::size_t b = 0; b < kBins; ++b)
        if (pdf[b] > 0)
            svg.bar(x.map(width * b) + 1, x.map(width * (b + 1)) - 1, y.map(0.0), y.map(pdf[b]), color(0));
    return svg.finish();
}

std::string selfloop_bars(const ChartData& d)
{
    Svg svg(d.title + " self-loop-only node ratio", "dApp", "ratio");
    const Axis x = Svg::x_axis(0.0, static_cast<double>(d.selfloop_ratios.size()));
    const Axis y = Svg::y_axis(0.0, 1.0);
    svg.frame(x, y, false);
    for (std::size_t i = 0; i < d.selfloop_ratios.size(); ++i) {
        const auto& [name, r] = d.selfloop_ratios[i];
        const double x0 = x.map(static_cast<double>(i)) + 2;
        const double x1 = x.map(static_cast<double>(i + 1)) - 2;
        svg.bar(x0, x1, y.map(0.0), y.map(r), color(0));
        const double cx = (x0 + x1) / 2;
        svg.text(cx, kHeight - kBottom + 12, name, "end",
                 " font-size=\"9\" transform=\"rotate(-45 " + num(cx) + ' ' + num(kHeight - kBottom + 12) + ")\"");
    }
    return svg.finish();
}

std::string clique_bars(const ChartData& d)
{
    std::map<std::size_t, double> mean;
    for (const auto& [name, hist] : d.clique_histograms)
        for (const auto& [size, v] : hist)
            mean[size] += v / static_cast<double>(d.clique_histograms.size());
    Svg svg(d.title + " maximal clique sizes", "clique size", "cliques per contract");
    if (mean.empty()) {
        const Axis x = Svg::x_axis(3.0, 4.0);
        const Axis y = Svg::y_axis(0.0, 1.0);
        svg.frame(x, y, false);
        svg.text(kWidth / 2, kHeight / 2, "no cliques of size 3 or more");
        return svg.finish();
    }
    const double lo = static_cast<double>(mean.begin()->first);
    const double hi = static_cast<double>(mean.rbegin()->first) + 1.0;
    double top = 0.0;
    for (const auto& [s, v] : mean)
        top = std::max(top, v);
    const Axis x = Svg::x_axis(lo, hi);
    const Axis y = Svg::y_axis(0.0, std::max(top, 1e-9));
    svg.frame(x, y, false);
    for (const auto& [size, v] : mean) {
        const double x0 = x.map(static_cast<double>(size)) + 2;
        const double x1 = x.map(static_cast<double>(size) + 1.0) - 2;
        svg.bar(x0, x1, y.map(0.0), y.map(v), color(0));
        svg.text((x0 + x1) / 2, kHeight - kBottom + 16, std::to_string(size));
    }
    return svg.finish();
}

std::string small_world_scatter(const ChartData& d)
{
    double top = 0.0;
    for (const auto& p : d.small_world)
        top = std::max({top, p.real_avg_path, p.random_avg_path});
    Svg svg(d.title + " small-world comparison", "dApp", "average path length");
    const Axis x = Svg::x_axis(0.0, static_cast<double>(d.small_world.size()));
    const Axis y = Svg::y_axis(0.0, std::max(1.0, std::ceil(top)));
    svg.frame(x, y, false);
    for (std::size_t i = 0; i < d.small_world.size(); ++i) {
        const auto& p = d.small_world[i];
        const double cx = x.map(static_cast<double>(i) + 0.5);
        svg.square(cx, y.map(p.real_avg_path), color(0));
        svg.cross(cx, y.map(p.random_avg_path), color(2), "random");
        svg.text(cx, kHeight - kBottom + 12, p.name, "end",
                 " font-size=\"9\" transform=\"rotate(-45 " + num(cx) + ' ' + num(kHeight - kBottom + 12) + ")\"");
    }
    return svg.finish();
}

std::string removal_traces(const ChartData& d)
{
    double top = 0.0, right = 0.0;
    for (const auto& t : d.traces) {
        for (double v : t.avg_path_lengths)
            top = std::max(top, v);
        if (!t.fractions.empty())
            right = std::max(right, t.fractions.back());
    }
    Svg svg(d.title + " node removal", "fraction of nodes removed", "average path length");
    const Axis x = Svg::x_axis(0.0, std::max(right, 0.01));
    const Axis y = Svg::y_axis(0.0, std::max(1.0, std::ceil(top)));
    svg.frame(x, y);
    std::size_t row = 0;
    for (const auto& t : d.traces) {
        const bool random = t.strategy == RemovalStrategy::Random;
        const std::string c = random ? kRandomColor : kTargetedColor;
        const std::string dash = t.strategy == RemovalStrategy::DegreeStatic ? " stroke-dasharray=\"5,3\"" : "";
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < t.fractions.size(); ++i)
            pts.push_back({x.map(t.fractions[i]), y.map(t.avg_path_lengths[i])});
        svg.polyline(pts, c, dash);
        svg.legend(row++, to_string(t.strategy), c);
        if (t.disconnected_at) {
            for (std::size_t i = 0; i < t.fractions.size(); ++i) {
                if (t.fractions[i] == *t.disconnected_at) {
                    svg.cross(pts[i].first, pts[i].second, c, "disconnected");
                    break;
                }
            }
        }
    }
    return svg.finish();
}

} // namespace

ChartOutput render_charts(const ChartData& data)
{
    ChartOutput out;
    auto emit = [&](bool present, const char* file, const char* what, auto render) {
        if (present)
            out.files.emplace_back(file, render(data));
        else
            out.notices.push_back(std::string("chart ") + file + " skipped: no " + what);
    };
    emit(!data.degree_histograms.empty(), "degree_pdf.svg", "degree histogram", degree_pdf);
    emit(!data.densities.empty(), "density_pdf.svg", "densities", density_pdf);
    emit(!data.selfloop_ratios.empty(), "selfloop_ratio.svg", "self-loop ratios", selfloop_bars);
    emit(!data.clique_histograms.empty(), "clique_sizes.svg", "clique histogram", clique_bars);
    emit(!data.small_world.empty(), "small_world.svg", "small-world comparison", small_world_scatter);
    emit(!data.traces.empty(), "resilience.svg", "removal traces", removal_traces);
    if (out.files.empty())
        out.notices = {"no chart sections present; nothing rendered"};
    return out;
}

} // namespace dappnet
