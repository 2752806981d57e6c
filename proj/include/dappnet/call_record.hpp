#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dappnet {

/// Label used for calls whose receiver is not a project contract.
inline constexpr const char* kNoneTarget = "None";

struct CallRecord {
    std::string file;
    std::string source_contract;
    std::string source_function;
    std::optional<std::string> target_contract; // nullopt is the None sentinel

    std::string target_label() const { return target_contract.value_or(kNoneTarget); }
    std::string qualified_function() const { return source_contract + "::" + source_function; }

    bool operator==(const CallRecord&) const = default;
};

inline constexpr const char* kCallTableHeader = "File,Source_Contract,Source_Function,Target_Contract";

/// Writes the four-column call table with `\n` line endings.
void write_call_table(std::ostream& out, const std::vector<CallRecord>& records);
std::string call_table_to_string(const std::vector<CallRecord>& records);

/// Reads a call table produced by this tool or a compatible extractor.
/// A literal `None` in the last column becomes the sentinel. Throws
/// std::runtime_error on a wrong header or malformed row.
std::vector<CallRecord> read_call_table(std::istream& in);

} // namespace dappnet
