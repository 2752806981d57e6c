#pragma once

#include "dappnet/call_record.hpp"
#include "dappnet/solidity/parser.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dappnet {

struct ScanResult {
    std::vector<sol::SourceUnit> units; // lexicographic by relative path
    std::vector<std::string> warnings;
};

/// Every `.sol` file under root, recursively. Files that cannot be read or
/// are not valid UTF-8 are skipped with a warning. Throws
/// std::runtime_error when root does not exist.
ScanResult scan_project(const std::filesystem::path& root);

bool is_valid_utf8(std::string_view bytes);

struct ContractInfo {
    std::string name;
    std::string kind;
    std::string file;
};

struct ExtractionResult {
    std::vector<CallRecord> records;
    std::vector<ContractInfo> contracts;
    std::size_t function_count = 0;
    std::vector<std::string> warnings;
};

/// Scan, tokenize, parse and resolve one source tree. Files failing to lex
/// or parse are reported and left out.
ExtractionResult extract_project(const std::filesystem::path& root);

/// Same as extract_project over in-memory units (paths are labels only).
ExtractionResult extract_units(std::vector<sol::SourceUnit> units);

inline constexpr const char* kContractListHeader = "Contract,Kind,File";
void write_contract_list(std::ostream& out, const std::vector<ContractInfo>& contracts);
std::vector<ContractInfo> read_contract_list(std::istream& in);

} // namespace dappnet
