#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dappnet::sol {

/// One `.sol` file of a project. `path` is the root-relative label used in
/// the call table, with forward slashes.
struct SourceUnit {
    std::string path;
    std::string text;
    std::vector<std::string> pragma_versions;
};

enum class TokenKind { Identifier, Keyword, Punct, String, Number };

struct Token {
    TokenKind kind;
    std::string text;
    int line = 0;
    std::size_t offset = 0;

    bool is(std::string_view s) const { return kind != TokenKind::String && text == s; }
    bool is_name() const { return kind == TokenKind::Identifier; }
};

class LexError : public std::runtime_error {
public:
    LexError(const std::string& file, int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

bool is_keyword(std::string_view word);

/// Comments and whitespace are dropped; string literals become one opaque
/// token each. Throws LexError for an unterminated comment or string.
std::vector<Token> tokenize(const SourceUnit& unit);

} // namespace dappnet::sol
