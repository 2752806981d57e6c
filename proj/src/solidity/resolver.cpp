#include "dappnet/solidity/resolver.hpp"

#include <algorithm>
#include <array>
#include <regex>

namespace dappnet::sol {

namespace {

constexpr std::array<std::string_view, 17> kBuiltinCalls = {
    "require", "assert", "revert", "keccak256", "sha256", "sha3", "ripemd160",
    "ecrecover", "addmod", "mulmod", "blockhash", "blobhash", "gasleft",
    "selfdestruct", "suicide", "_", "this",
};

// Receivers whose members are language built-ins, never contract calls.
constexpr std::array<std::string_view, 3> kBuiltinReceivers = {"abi", "bytes", "string"};

// Array members callable on any storage array.
constexpr std::array<std::string_view, 2> kArrayMembers = {"push", "pop"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& arr, std::string_view s)
{
    return std::find(arr.begin(), arr.end(), s) != arr.end();
}

bool is_elementary_type(const std::string& name)
{
    static const std::regex re(
        "(u?int[0-9]*|bytes[0-9]*|address|bool|string|byte|u?fixed([0-9]+x[0-9]+)?)");
    return std::regex_match(name, re);
}

class BodyWalker {
public:
    BodyWalker(const Project& project, const ParsedUnit& unit, const FunctionDecl& fn,
               std::vector<CallRecord>& out)
        : project_(project), unit_(unit), fn_(fn), out_(out)
    {
    }

    void run()
    {
        collect_locals();
        std::size_t i = fn_.body_begin;
        while (i < fn_.body_end)
            i = step(i);
    }

private:
    const Token& tok(std::size_t i) const { return unit_.tokens[i]; }
    bool at(std::size_t i, std::string_view s) const
    {
        return i >= fn_.body_begin && i < fn_.body_end && tok(i).is(s);
    }
    bool name_at(std::size_t i) const
    {
        return i >= fn_.body_begin && i < fn_.body_end && tok(i).is_name();
    }

    std::size_t match_forward(std::size_t i) const
    {
        const std::string open = tok(i).text;
        const std::string close = open == "{" ? "}" : open == "(" ? ")" : "]";
        int depth = 0;
        for (std::size_t j = i; j < fn_.body_end; ++j) {
            if (tok(j).kind != TokenKind::Punct)
                continue;
            if (tok(j).text == open)
                ++depth;
            else if (tok(j).text == close && --depth == 0)
                return j;
        }
        return fn_.body_end;
    }

    // Index of the opener for the closer at i, or body_begin - 1 when absent.
    std::optional<std::size_t> match_backward(std::size_t i) const
    {
        const std::string close = tok(i).text;
        const std::string open = close == "}" ? "{" : close == ")" ? "(" : "[";
        int depth = 0;
        for (std::size_t j = i + 1; j-- > fn_.body_begin;) {
            if (tok(j).kind != TokenKind::Punct)
                continue;
            if (tok(j).text == close)
                ++depth;
            else if (tok(j).text == open && --depth == 0)
                return j;
        }
        return std::nullopt;
    }

    void collect_locals()
    {
        for (const auto& [name, type] : fn_.params)
            locals_.emplace(name, type);
        for (std::size_t j = fn_.body_begin; j < fn_.body_end; ++j) {
            if (!tok(j).is_name() || at(j - 1, "."))
                continue;
            std::size_t k = j + 1;
            while (at(k, "["))
                k = match_forward(k) + 1;
            while (at(k, "memory") || at(k, "storage") || at(k, "calldata") || at(k, "payable"))
                ++k;
            if (name_at(k) && (at(k + 1, "=") || at(k + 1, ";") || at(k + 1, ",") || at(k + 1, ")")))
                locals_.emplace(tok(k).text, tok(j).text);
        }
    }

    // Past the identifier chain `A.B.C` starting at i.
    std::size_t skip_name_chain(std::size_t i) const
    {
        if (!name_at(i))
            return i;
        ++i;
        while (at(i, ".") && name_at(i + 1))
            i += 2;
        return i;
    }

    std::size_t step(std::size_t i)
    {
        const Token& t = tok(i);
        if (t.is("assembly")) {
            std::size_t j = i + 1;
            while (j < fn_.body_end && !tok(j).is("{"))
                ++j;
            return j < fn_.body_end ? match_forward(j) + 1 : j;
        }
        if (t.is("emit") || t.is("catch") || (t.is("revert") && name_at(i + 1)))
            return skip_name_chain(i + 1);
        if (t.is("new"))
            return handle_new(i);
        if (!t.is_name())
            return i + 1;

        std::size_t j = i + 1;
        if (at(j, "{")) // call options: f{value: v}(...)
            j = match_forward(j) + 1;
        if (!at(j, "("))
            return i + 1;

        if (at(i - 1, "."))
            handle_member_call(i);
        else
            handle_bare_call(i);
        return i + 1;
    }

    std::size_t handle_new(std::size_t i)
    {
        const std::size_t end = skip_name_chain(i + 1);
        if (end == i + 1)
            return i + 1;
        const std::string& type = tok(end - 1).text;
        if (project_.contract(type))
            emit(type);
        else if (!is_elementary_type(type) && !at(end, "["))
            emit(std::nullopt);
        return end;
    }

    void handle_bare_call(std::size_t i)
    {
        const std::string& name = tok(i).text;
        if (contains(kBuiltinCalls, name) || is_elementary_type(name))
            return;
        if (project_.contract(name) || project_.is_non_callable(name) || unit_.non_callables.count(name))
            return; // type conversion or struct/event/error construction
        emit(project_.declaring_contract(fn_.contract, name));
    }

    void handle_member_call(std::size_t i)
    {
        const std::string& callee = tok(i).text;
        const std::size_t r = i - 2;
        if (r < fn_.body_begin) {
            emit(std::nullopt);
            return;
        }
        const Token& recv = tok(r);
        const bool chained = at(r - 1, ".");

        if (recv.is_name() && !chained) {
            if (contains(kBuiltinReceivers, recv.text))
                return;
            if (recv.text == "this") {
                emit(project_.declaring_contract(fn_.contract, callee).value_or(fn_.contract));
                return;
            }
            if (recv.text == "super") {
                emit(project_.declaring_contract(fn_.contract, callee, true));
                return;
            }
            if (auto type = variable_contract(recv.text)) {
                emit(*type);
                return;
            }
            if (project_.contract(recv.text)) {
                emit(recv.text);
                return;
            }
        } else if (recv.is("]")) {
            if (auto open = match_backward(r); open && name_at(*open - 1) && !at(*open - 2, ".")) {
                if (auto type = variable_contract(tok(*open - 1).text)) {
                    emit(*type);
                    return;
                }
            }
        } else if (recv.is(")")) {
            // C(x).f(): explicit conversion to a project contract type.
            if (auto open = match_backward(r); open && name_at(*open - 1) && !at(*open - 2, ".")
                && !at(*open - 2, "new") && project_.contract(tok(*open - 1).text)) {
                emit(tok(*open - 1).text);
                return;
            }
        }

        if (contains(kArrayMembers, callee))
            return;
        if (project_.uses_library_attachment(fn_.contract, fn_.file)) {
            if (auto lib = project_.unique_library_for(callee)) {
                emit(*lib);
                return;
            }
        }
        emit(std::nullopt);
    }

    // Project contract type of a local, parameter or state variable.
    std::optional<std::string> variable_contract(const std::string& var) const
    {
        std::optional<std::string> type;
        if (auto it = locals_.find(var); it != locals_.end())
            type = it->second;
        else
            type = project_.state_var_type(fn_.contract, var);
        if (type && project_.contract(*type))
            return type;
        return std::nullopt;
    }

    void emit(std::optional<std::string> target)
    {
        out_.push_back(CallRecord{fn_.file, fn_.contract, fn_.name, std::move(target)});
    }

    const Project& project_;
    const ParsedUnit& unit_;
    const FunctionDecl& fn_;
    std::vector<CallRecord>& out_;
    std::map<std::string, std::string> locals_;
};

} // namespace

Project::Project(std::vector<ParsedUnit> units) : units_(std::move(units))
{
    for (std::size_t u = 0; u < units_.size(); ++u) {
        auto& unit = units_[u];
        for (std::size_t c = 0; c < unit.contracts.size(); ++c) {
            auto& decl = unit.contracts[c];
            if (contract_index_.count(decl.name)) {
                std::string renamed;
                for (int k = 2;; ++k) {
                    renamed = decl.name + "__" + std::to_string(k);
                    if (!contract_index_.count(renamed))
                        break;
                }
                warnings_.push_back(unit.unit.path + ":" + std::to_string(decl.line) + ": duplicate contract '"
                                    + decl.name + "' renamed to '" + renamed + "'");
                for (auto& fn : unit.functions)
                    if (fn.contract_pos == c)
                        fn.contract = renamed;
                decl.name = renamed;
            }
            contract_index_[decl.name] = {u, c};
            callables_[decl.name];
        }
        for (const auto& fn : unit.functions) {
            if (fn.is_modifier)
                continue;
            callables_[fn.contract].insert(fn.name);
            if (unit.contracts[fn.contract_pos].kind == ContractKind::Library) {
                auto& libs = library_functions_[fn.name];
                if (std::find(libs.begin(), libs.end(), fn.contract) == libs.end())
                    libs.push_back(fn.contract);
            }
        }
        if (unit.file_using_for)
            files_with_using_.insert(unit.unit.path);
        non_callables_.insert(unit.non_callables.begin(), unit.non_callables.end());
    }
}

const ContractDecl* Project::contract(const std::string& name) const
{
    auto it = contract_index_.find(name);
    if (it == contract_index_.end())
        return nullptr;
    return &units_[it->second.first].contracts[it->second.second];
}

std::vector<const ContractDecl*> Project::contracts() const
{
    std::vector<const ContractDecl*> out;
    for (const auto& unit : units_)
        for (const auto& decl : unit.contracts)
            out.push_back(&decl);
    return out;
}

std::vector<std::string> Project::linearized_bases(const std::string& name) const
{
    std::vector<std::string> order;
    std::set<std::string> seen{name};
    // Rightmost base is the most derived one.
    auto visit = [&](auto&& self, const std::string& current) -> void {
        const ContractDecl* decl = contract(current);
        if (!decl)
            return;
        for (auto it = decl->bases.rbegin(); it != decl->bases.rend(); ++it) {
            if (!seen.insert(*it).second)
                continue;
            order.push_back(*it);
            self(self, *it);
        }
    };
    visit(visit, name);
    return order;
}

std::optional<std::string> Project::declaring_contract(const std::string& contract_name,
                                                       const std::string& function, bool skip_self) const
{
    auto declares = [&](const std::string& c) {
        auto it = callables_.find(c);
        return it != callables_.end() && it->second.count(function) > 0;
    };
    if (!skip_self && declares(contract_name))
        return contract_name;
    for (const auto& base : linearized_bases(contract_name))
        if (declares(base))
            return base;
    return std::nullopt;
}

std::optional<std::string> Project::state_var_type(const std::string& contract_name, const std::string& var) const
{
    if (const ContractDecl* decl = contract(contract_name)) {
        if (auto it = decl->state_var_types.find(var); it != decl->state_var_types.end())
            return it->second;
    }
    for (const auto& base : linearized_bases(contract_name)) {
        if (const ContractDecl* decl = contract(base)) {
            if (auto it = decl->state_var_types.find(var); it != decl->state_var_types.end())
                return it->second;
        }
    }
    return std::nullopt;
}

std::optional<std::string> Project::unique_library_for(const std::string& function) const
{
    auto it = library_functions_.find(function);
    if (it == library_functions_.end() || it->second.size() != 1)
        return std::nullopt;
    return it->second.front();
}

bool Project::uses_library_attachment(const std::string& contract_name, const std::string& file) const
{
    if (files_with_using_.count(file))
        return true;
    if (const ContractDecl* decl = contract(contract_name); decl && decl->has_using_for)
        return true;
    for (const auto& base : linearized_bases(contract_name))
        if (const ContractDecl* decl = contract(base); decl && decl->has_using_for)
            return true;
    return false;
}

std::vector<CallRecord> resolve_calls(const Project& project)
{
    std::vector<CallRecord> records;
    for (const auto& unit : project.units())
        for (const auto& fn : unit.functions)
            if (fn.has_body)
                BodyWalker(project, unit, fn, records).run();
    return records;
}

} // namespace dappnet::sol
