#include "dappnet/solidity/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace dappnet::sol {

namespace {

constexpr std::array kKeywords = {
    "abstract", "anonymous", "as", "assembly", "break", "calldata", "catch",
    "constant", "constructor", "continue", "contract", "delete", "do", "else",
    "emit", "enum", "event", "external", "false", "for", "function", "if",
    "immutable", "import", "indexed", "interface", "internal", "is", "library",
    "mapping", "memory", "modifier", "new", "override", "payable", "pragma",
    "private", "public", "pure", "return", "returns", "storage", "struct",
    "true", "try", "type", "unchecked", "using", "view", "virtual", "while",
};

// Longest first so that greedy matching picks ">>>=" over ">>".
constexpr std::array<std::string_view, 26> kOperators = {
    ">>>=", ">>>", ">>=", "<<=", "**", "=>", "==", "!=", "<=", ">=", "&&",
    "||",   "++",  "--",  "+=",  "-=", "*=", "/=", "%=", "|=", "&=", "^=",
    "<<",   ">>",  "->",  ":=",
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
public:
    explicit Lexer(const SourceUnit& unit) : unit_(unit), src_(unit.text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (starts_with("//")) {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    ++pos_;
            } else if (starts_with("/*")) {
                block_comment();
            } else if (c == '"' || c == '\'') {
                out.push_back(string_literal(pos_, pos_));
            } else if (ident_start(c)) {
                const std::size_t start = pos_;
                while (pos_ < src_.size() && ident_char(src_[pos_]))
                    ++pos_;
                std::string word(src_.substr(start, pos_ - start));
                if ((word == "hex" || word == "unicode") && pos_ < src_.size()
                    && (src_[pos_] == '"' || src_[pos_] == '\'')) {
                    out.push_back(string_literal(start, pos_));
                    continue;
                }
                const auto kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
                out.push_back(Token{kind, std::move(word), line_, start});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back(number());
            } else {
                out.push_back(punct());
            }
        }
        return out;
    }

private:
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void block_comment()
    {
        const int open_line = line_;
        pos_ += 2;
        while (pos_ < src_.size() && !starts_with("*/")) {
            if (src_[pos_] == '\n')
                ++line_;
            ++pos_;
        }
        if (pos_ >= src_.size())
            throw LexError(unit_.path, open_line, "unterminated block comment");
        pos_ += 2;
    }

    Token string_literal(std::size_t start, std::size_t quote_pos)
    {
        const char quote = src_[quote_pos];
        pos_ = quote_pos + 1;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n')
                throw LexError(unit_.path, line_, "unterminated string literal");
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_[pos_] == quote)
                break;
            ++pos_;
        }
        ++pos_;
        return Token{TokenKind::String, std::string(src_.substr(start, pos_ - start)), line_, start};
    }

    Token number()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (ident_char(c)) {
                ++pos_;
            } else if (c == '.' && pos_ + 1 < src_.size()
                       && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                ++pos_;
            } else {
                break;
            }
        }
        return Token{TokenKind::Number, std::string(src_.substr(start, pos_ - start)), line_, start};
    }

    Token punct()
    {
        const std::size_t start = pos_;
        for (auto op : kOperators) {
            if (starts_with(op)) {
                pos_ += op.size();
                return Token{TokenKind::Punct, std::string(op), line_, start};
            }
        }
        // A multi-byte UTF-8 sequence stays one token.
        std::size_t len = 1;
        const auto lead = static_cast<unsigned char>(src_[pos_]);
        if (lead >= 0xF0)
            len = 4;
        else if (lead >= 0xE0)
            len = 3;
        else if (lead >= 0xC0)
            len = 2;
        len = std::min(len, src_.size() - pos_);
        pos_ += len;
        return Token{TokenKind::Punct, std::string(src_.substr(start, len)), line_, start};
    }

    const SourceUnit& unit_;
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

} // namespace

LexError::LexError(const std::string& file, int line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), line_(line)
{
}

bool is_keyword(std::string_view word)
{
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(const SourceUnit& unit)
{
    return Lexer(unit).run();
}

} // namespace dappnet::sol
