#pragma once

#include "dappnet/call_record.hpp"
#include "dappnet/solidity/parser.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dappnet::sol {

/// Merged symbol table over every parsed file of one project.
class Project {
public:
    /// Units must already be in emission order. Duplicate contract names are
    /// renamed `Name__2`, `Name__3`, ... with a warning each.
    explicit Project(std::vector<ParsedUnit> units);

    const std::vector<ParsedUnit>& units() const { return units_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    const ContractDecl* contract(const std::string& name) const;
    std::vector<const ContractDecl*> contracts() const;

    /// Contract declaring a callable `name`, searching `contract` first and
    /// then its bases, most derived first.
    std::optional<std::string> declaring_contract(const std::string& contract,
                                                  const std::string& function,
                                                  bool skip_self = false) const;

    /// Declared type of a state variable visible from `contract`.
    std::optional<std::string> state_var_type(const std::string& contract, const std::string& var) const;

    /// The single project library declaring `function`, if exactly one does.
    std::optional<std::string> unique_library_for(const std::string& function) const;

    bool uses_library_attachment(const std::string& contract, const std::string& file) const;
    bool is_non_callable(const std::string& name) const { return non_callables_.count(name) > 0; }

private:
    std::vector<std::string> linearized_bases(const std::string& contract) const;

    std::vector<ParsedUnit> units_;
    std::vector<std::string> warnings_;
    std::map<std::string, std::pair<std::size_t, std::size_t>> contract_index_; // unit, position
    std::map<std::string, std::set<std::string>> callables_;                    // contract -> function names
    std::map<std::string, std::vector<std::string>> library_functions_;         // function -> libraries
    std::set<std::string> files_with_using_;
    std::set<std::string> non_callables_;
};

/// One record per call site in every function and modifier body, in file
/// then source order.
std::vector<CallRecord> resolve_calls(const Project& project);

} // namespace dappnet::sol
