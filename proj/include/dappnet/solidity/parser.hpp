#pragma once

#include "dappnet/solidity/lexer.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dappnet::sol {

enum class ContractKind { Contract, Library, Interface, AbstractContract };
enum class Visibility { Public, External, Internal, Private, Unspecified };

std::string to_string(ContractKind kind);
std::string to_string(Visibility vis);

struct ContractDecl {
    std::string name;
    ContractKind kind = ContractKind::Contract;
    std::string file;
    std::vector<std::string> bases;
    // State variable name -> element type identifier (arrays and mapping
    // wrappers stripped).
    std::map<std::string, std::string> state_var_types;
    bool has_using_for = false;
    int line = 0;
};

struct FunctionDecl {
    std::string contract;
    std::size_t contract_pos = 0; // index of the owning contract within its unit
    std::string name; // "constructor", "fallback", "receive" for the special forms
    Visibility visibility = Visibility::Unspecified;
    int ordinal = 0;  // overload index in source order within (contract, name)
    bool is_modifier = false;
    std::string file;
    int line = 0;
    // Parameters and named return values, in declaration order.
    std::vector<std::pair<std::string, std::string>> params;
    // Body is the half-open token range strictly inside the braces; empty
    // when the function has no body.
    bool has_body = false;
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
};

/// Everything a single file contributes to the project symbol table.
struct ParsedUnit {
    SourceUnit unit;
    std::vector<Token> tokens;
    std::vector<ContractDecl> contracts;
    std::vector<FunctionDecl> functions;
    bool file_using_for = false;
    // Names that look like calls but never are: structs, events, errors, enums.
    std::set<std::string> non_callables;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

/// Recognizes contract-level declarations and function bodies; anything
/// outside the supported subset is skipped by brace balancing. Throws
/// ParseError on braces that do not balance at file scope.
ParsedUnit parse_declarations(std::vector<Token> tokens, SourceUnit unit);

} // namespace dappnet::sol
