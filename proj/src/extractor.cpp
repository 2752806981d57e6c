#include "dappnet/extractor.hpp"

#include "dappnet/solidity/lexer.hpp"
#include "dappnet/solidity/resolver.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace dappnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    return fields;
}

bool next_line(std::istream& in, std::string& line)
{
    if (!std::getline(in, line))
        return false;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return true;
}

} // namespace

bool is_valid_utf8(std::string_view bytes)
{
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto c = static_cast<unsigned char>(bytes[i]);
        std::size_t extra;
        std::uint32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07;
        } else {
            return false;
        }
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= bytes.size())
                return false;
            const auto cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80)
                return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Overlong forms, surrogates, out of range.
        if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000)
            || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            return false;
        i += extra + 1;
    }
    return true;
}

ScanResult scan_project(const fs::path& root)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw std::runtime_error("source root does not exist or is not a directory: " + root.string());

    std::vector<std::pair<std::string, fs::path>> files;
    for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec)
            break;
        if (it->is_regular_file(ec) && it->path().extension() == ".sol")
            files.emplace_back(fs::relative(it->path(), root).generic_string(), it->path());
    }
    std::sort(files.begin(), files.end());

    ScanResult result;
    for (const auto& [label, path] : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            result.warnings.push_back(label + ": unreadable, skipped");
            continue;
        }
        std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        if (in.bad()) {
            result.warnings.push_back(label + ": read error, skipped");
            continue;
        }
        if (!is_valid_utf8(text)) {
            result.warnings.push_back(label + ": not valid UTF-8, skipped");
            continue;
        }
        result.units.push_back(sol::SourceUnit{label, std::move(text), {}});
    }
    return result;
}

ExtractionResult extract_units(std::vector<sol::SourceUnit> units)
{
    ExtractionResult result;
    std::vector<sol::ParsedUnit> parsed;
    for (auto& unit : units) {
        try {
            auto tokens = sol::tokenize(unit);
            parsed.push_back(sol::parse_declarations(std::move(tokens), std::move(unit)));
        } catch (const std::runtime_error& e) {
            result.warnings.push_back(std::string(e.what()) + " (file skipped)");
        }
    }
    sol::Project project(std::move(parsed));
    result.warnings.insert(result.warnings.end(), project.warnings().begin(), project.warnings().end());
    for (const auto* decl : project.contracts())
        result.contracts.push_back(ContractInfo{decl->name, sol::to_string(decl->kind), decl->file});
    std::set<std::pair<std::string, std::string>> functions;
    for (const auto& unit : project.units())
        for (const auto& fn : unit.functions)
            functions.emplace(fn.contract, fn.name);
    result.function_count = functions.size();
    result.records = sol::resolve_calls(project);
    return result;
}

ExtractionResult extract_project(const fs::path& root)
{
    ScanResult scan = scan_project(root);
    ExtractionResult result = extract_units(std::move(scan.units));
    result.warnings.insert(result.warnings.begin(), scan.warnings.begin(), scan.warnings.end());
    return result;
}

void write_call_table(std::ostream& out, const std::vector<CallRecord>& records)
{
    out << kCallTableHeader << '\n';
    for (const auto& r : records)
        out << r.file << ',' << r.source_contract << ',' << r.source_function << ',' << r.target_label() << '\n';
}

std::string call_table_to_string(const std::vector<CallRecord>& records)
{
    std::ostringstream out;
    write_call_table(out, records);
    return out.str();
}

std::vector<CallRecord> read_call_table(std::istream& in)
{
    std::string line;
    if (!next_line(in, line) || line != kCallTableHeader)
        throw std::runtime_error("call table: expected header '" + std::string(kCallTableHeader) + "'");
    std::vector<CallRecord> records;
    std::size_t row = 1;
    while (next_line(in, line)) {
        ++row;
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4 || fields[1].empty() || fields[2].empty() || fields[3].empty())
            throw std::runtime_error("call table: malformed row " + std::to_string(row));
        CallRecord r{fields[0], fields[1], fields[2], std::nullopt};
        if (fields[3] != kNoneTarget)
            r.target_contract = fields[3];
        records.push_back(std::move(r));
    }
    return records;
}

void write_contract_list(std::ostream& out, const std::vector<ContractInfo>& contracts)
{
    out << kContractListHeader << '\n';
    for (const auto& c : contracts)
        out << c.name << ',' << c.kind << ',' << c.file << '\n';
}

std::vector<ContractInfo> read_contract_list(std::istream& in)
{
    std::string line;
    if (!next_line(in, line) || line != kContractListHeader)
        throw std::runtime_error("contract list: expected header '" + std::string(kContractListHeader) + "'");
    std::vector<ContractInfo> out;
    while (next_line(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw std::runtime_error("contract list: malformed row");
        out.push_back(ContractInfo{fields[0], fields[1], fields[2]});
    }
    return out;
}

} // namespace dappnet
