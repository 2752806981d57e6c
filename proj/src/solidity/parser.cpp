#include "dappnet/solidity/parser.hpp"

#include <cctype>
#include <algorithm>
#include <optional>

namespace dappnet::sol {

ParseError::ParseError(const std::string& file, int line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

std::string to_string(ContractKind kind)
{
    switch (kind) {
    case ContractKind::Contract: return "contract";
    case ContractKind::Library: return "library";
    case ContractKind::Interface: return "interface";
    case ContractKind::AbstractContract: return "abstract-contract";
    }
    return "contract";
}

std::string to_string(Visibility vis)
{
    switch (vis) {
    case Visibility::Public: return "public";
    case Visibility::External: return "external";
    case Visibility::Internal: return "internal";
    case Visibility::Private: return "private";
    case Visibility::Unspecified: return "unspecified";
    }
    return "unspecified";
}

namespace {

struct TypeAndName {
    std::string type;
    std::string name;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, SourceUnit unit)
    {
        out_.tokens = std::move(tokens);
        out_.unit = std::move(unit);
    }

    ParsedUnit run()
    {
        std::size_t i = 0;
        while (i < size()) {
            const Token& t = tok(i);
            if (t.is("pragma")) {
                i = parse_pragma(i);
            } else if (t.is("import")) {
                i = skip_to_semicolon(i);
            } else if (t.is("contract") || t.is("library") || t.is("interface")) {
                i = parse_contract(i, kind_of(t.text));
            } else if (t.is("abstract") && i + 1 < size() && tok(i + 1).is("contract")) {
                i = parse_contract(i + 1, ContractKind::AbstractContract);
            } else if (t.is("}")) {
                throw error(i, "unbalanced '}' at file scope");
            } else {
                note_non_callable(i);
                if (t.is("using"))
                    out_.file_using_for = true;
                i = skip_item(i);
            }
        }
        return std::move(out_);
    }

private:
    std::size_t size() const { return out_.tokens.size(); }
    const Token& tok(std::size_t i) const { return out_.tokens[i]; }
    bool at(std::size_t i, std::string_view s) const { return i < size() && tok(i).is(s); }

    ParseError error(std::size_t i, const std::string& what) const
    {
        const int line = i < size() ? tok(i).line : (size() ? tok(size() - 1).line : 1);
        return ParseError(out_.unit.path, line, what);
    }

    static ContractKind kind_of(const std::string& word)
    {
        if (word == "library")
            return ContractKind::Library;
        if (word == "interface")
            return ContractKind::Interface;
        return ContractKind::Contract;
    }

    // Index of the token closing the bracket opened at i.
    std::size_t match(std::size_t i) const
    {
        const std::string open = tok(i).text;
        const std::string close = open == "{" ? "}" : open == "(" ? ")" : "]";
        int depth = 0;
        for (std::size_t j = i; j < size(); ++j) {
            if (tok(j).kind != TokenKind::Punct)
                continue;
            if (tok(j).text == open)
                ++depth;
            else if (tok(j).text == close && --depth == 0)
                return j;
        }
        throw error(i, "unbalanced '" + open + "'");
    }

    std::size_t skip_to_semicolon(std::size_t i) const
    {
        while (i < size() && !tok(i).is(";")) {
            if (tok(i).is("{") || tok(i).is("(") || tok(i).is("["))
                i = match(i);
            ++i;
        }
        return i + 1;
    }

    // Skips one declaration: up to a ';' or through a balanced '{...}' group.
    std::size_t skip_item(std::size_t i) const
    {
        while (i < size()) {
            if (tok(i).is(";"))
                return i + 1;
            if (tok(i).is("}"))
                throw error(i, "unbalanced '}'");
            if (tok(i).is("{"))
                return match(i) + 1;
            if (tok(i).is("(") || tok(i).is("["))
                i = match(i);
            ++i;
        }
        return i;
    }

    void note_non_callable(std::size_t i)
    {
        const Token& t = tok(i);
        if ((t.is("struct") || t.is("enum") || t.is("event") || t.is("error") || t.is("type"))
            && i + 1 < size() && tok(i + 1).is_name())
            out_.non_callables.insert(tok(i + 1).text);
    }

    std::size_t parse_pragma(std::size_t i)
    {
        const std::size_t end = skip_to_semicolon(i) - 1;
        if (at(i + 1, "solidity") && i + 2 < end) {
            const std::size_t from = tok(i + 2).offset;
            const std::size_t to = end < size() ? tok(end).offset : out_.unit.text.size();
            std::string version = out_.unit.text.substr(from, to - from);
            while (!version.empty() && std::isspace(static_cast<unsigned char>(version.back())))
                version.pop_back();
            out_.unit.pragma_versions.push_back(std::move(version));
        }
        return end + 1;
    }

    std::size_t parse_contract(std::size_t i, ContractKind kind)
    {
        ContractDecl decl;
        decl.kind = kind;
        decl.file = out_.unit.path;
        decl.line = tok(i).line;
        ++i;
        if (i >= size() || !tok(i).is_name())
            throw error(i, "expected contract name");
        decl.name = tok(i).text;
        ++i;
        if (at(i, "is")) {
            ++i;
            while (i < size() && !tok(i).is("{")) {
                if (tok(i).is_name()) {
                    std::string base = tok(i).text;
                    while (at(i + 1, ".") && i + 2 < size() && tok(i + 2).is_name()) {
                        i += 2;
                        base = tok(i).text;
                    }
                    if (std::find(decl.bases.begin(), decl.bases.end(), base) == decl.bases.end())
                        decl.bases.push_back(base);
                    ++i;
                    if (at(i, "("))
                        i = match(i) + 1;
                } else if (tok(i).is(",")) {
                    ++i;
                } else {
                    throw error(i, "unexpected token '" + tok(i).text + "' in inheritance list");
                }
            }
        }
        if (!at(i, "{"))
            throw error(i, "expected '{' after contract header");
        const std::size_t close = match(i);
        ++i;
        current_ = &decl;
        while (i < close)
            i = parse_member(i, close);
        current_ = nullptr;
        out_.contracts.push_back(std::move(decl));
        return close + 1;
    }

    std::size_t parse_member(std::size_t i, std::size_t close)
    {
        const Token& t = tok(i);
        if (t.is("function"))
            return parse_function(i, close, false);
        if ((t.is("constructor") || t.is("fallback") || t.is("receive")) && at(i + 1, "("))
            return parse_function(i, close, false);
        if (t.is("modifier"))
            return parse_function(i, close, true);
        if (t.is("using")) {
            current_->has_using_for = true;
            return std::min(skip_item(i), close);
        }
        if (t.is("struct") || t.is("enum") || t.is("event") || t.is("error") || t.is("type")) {
            note_non_callable(i);
            return std::min(skip_item(i), close);
        }
        if (t.is(";"))
            return i + 1;
        return parse_state_variable(i, close);
    }

    std::size_t parse_state_variable(std::size_t i, std::size_t close)
    {
        std::size_t end = i;
        while (end < close && !tok(end).is(";")) {
            if (tok(end).is("{")) // not a declaration we understand
                return match(end) + 1;
            if (tok(end).is("(") || tok(end).is("["))
                end = match(end);
            ++end;
        }
        std::size_t decl_end = i;
        while (decl_end < end && !tok(decl_end).is("="))
            ++decl_end;
        if (!tok(i).is("function")) {
            if (auto tn = type_and_name(i, decl_end); tn && !tn->name.empty())
                current_->state_var_types[tn->name] = tn->type;
        }
        return end + 1;
    }

    // Element type identifier and declared name of `TYPE [...] NAME` in [b, e).
    std::optional<TypeAndName> type_and_name(std::size_t b, std::size_t e) const
    {
        if (b >= e)
            return std::nullopt;
        TypeAndName tn;
        std::size_t type_end = b;
        if (tok(b).is("mapping")) {
            if (!at(b + 1, "("))
                return std::nullopt;
            const std::size_t pclose = match(b + 1);
            std::size_t arrow = 0;
            for (std::size_t j = b + 2; j < pclose; ++j)
                if (tok(j).is("=>"))
                    arrow = j;
            if (arrow == 0 || arrow + 1 >= pclose)
                return std::nullopt;
            std::size_t j = arrow + 1;
            tn.type = tok(j).text;
            while (at(j + 1, ".") && j + 2 < pclose && tok(j + 2).is_name()) {
                j += 2;
                tn.type = tok(j).text;
            }
            type_end = pclose;
        } else {
            if (!tok(b).is_name() && tok(b).kind != TokenKind::Keyword)
                return std::nullopt;
            tn.type = tok(b).text;
            while (at(type_end + 1, ".") && type_end + 2 < e && tok(type_end + 2).is_name()) {
                type_end += 2;
                tn.type = tok(type_end).text;
            }
        }
        for (std::size_t j = type_end + 1; j < e; ++j) {
            if (tok(j).is("(") || tok(j).is("[")) {
                j = match(j);
                continue;
            }
            if (tok(j).is_name())
                tn.name = tok(j).text;
        }
        return tn;
    }

    std::vector<std::pair<std::string, std::string>> parse_params(std::size_t open) const
    {
        std::vector<std::pair<std::string, std::string>> params;
        const std::size_t close = match(open);
        std::size_t start = open + 1;
        for (std::size_t j = open + 1; j <= close; ++j) {
            if (tok(j).is("(") || tok(j).is("[")) {
                j = match(j);
                continue;
            }
            if (tok(j).is(",") || j == close) {
                if (auto tn = type_and_name(start, j); tn && !tn->name.empty())
                    params.emplace_back(tn->name, tn->type);
                start = j + 1;
            }
        }
        return params;
    }

    std::size_t parse_function(std::size_t i, std::size_t close, bool modifier)
    {
        FunctionDecl fn;
        fn.contract = current_->name;
        fn.contract_pos = out_.contracts.size();
        fn.file = out_.unit.path;
        fn.line = tok(i).line;
        fn.is_modifier = modifier;
        const Token& head = tok(i);
        std::size_t j = i + 1;
        if (head.is("function") || head.is("modifier")) {
            if (j < close && (tok(j).is_name() || tok(j).kind == TokenKind::Keyword) && !tok(j).is("(")) {
                fn.name = tok(j).text;
                ++j;
            } else if (head.is("function")) {
                fn.name = "fallback"; // pre-0.6 unnamed fallback
            }
        } else {
            fn.name = head.text;
        }
        if (at(j, "(")) {
            fn.params = parse_params(j);
            j = match(j) + 1;
        }
        // Header: visibility, mutability, modifier invocations, returns (...).
        while (j < close && !tok(j).is("{") && !tok(j).is(";")) {
            const Token& t = tok(j);
            if (t.is("public"))
                fn.visibility = Visibility::Public;
            else if (t.is("external"))
                fn.visibility = Visibility::External;
            else if (t.is("internal"))
                fn.visibility = Visibility::Internal;
            else if (t.is("private"))
                fn.visibility = Visibility::Private;
            if (t.is("returns") && at(j + 1, "(")) {
                auto rets = parse_params(j + 1);
                fn.params.insert(fn.params.end(), rets.begin(), rets.end());
                j = match(j + 1) + 1;
                continue;
            }
            if (t.is("(") || t.is("["))
                j = match(j);
            ++j;
        }
        if (j >= close)
            throw error(j, "function '" + fn.name + "' runs past end of contract");
        std::size_t next;
        if (tok(j).is("{")) {
            const std::size_t body_close = match(j);
            fn.has_body = true;
            fn.body_begin = j + 1;
            fn.body_end = body_close;
            next = body_close + 1;
        } else {
            // `function (uint) external f;` is a function-typed state variable.
            if (head.is("function") && at(i + 1, "("))
                return j + 1;
            next = j + 1;
        }
        fn.ordinal = 0;
        for (const auto& other : out_.functions)
            if (other.contract == fn.contract && other.name == fn.name)
                ++fn.ordinal;
        out_.functions.push_back(std::move(fn));
        return next;
    }

    ParsedUnit out_;
    ContractDecl* current_ = nullptr;
};

} // namespace

ParsedUnit parse_declarations(std::vector<Token> tokens, SourceUnit unit)
{
    return Parser(std::move(tokens), std::move(unit)).run();
}

} // namespace dappnet::sol
