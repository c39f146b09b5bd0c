#pragma once

#include <map>
#include <string>
#include <variant>

#include "casp/ast.hpp"
#include "casp/diag.hpp"
#include "casp/value.hpp"

namespace casp {

struct FuncClosure {
    std::vector<Param> params;
    TypePtr ret;
    ExprPtr body;
};

struct ProcClosure {
    std::vector<Param> params;
    StmtPtr body;
};

struct OpRef {
    const Defop* op;
};

// Top-level evaluation environment. Declaration-level names bind once and
// never rebind; scoped lets are handled by the evaluator with a local
// overlay, not by mutating this.
class Env {
public:
    using Binding = std::variant<Value, FuncClosure, ProcClosure, OpRef>;

    void bind(const std::string& name, Binding b, Pos pos = {}) {
        auto [it, inserted] = map_.emplace(name, std::move(b));
        if (!inserted)
            throw Diag("DuplicateBinding", "'" + name + "' is already bound", pos);
    }

    const Binding* lookup(const std::string& name) const {
        auto it = map_.find(name);
        return it == map_.end() ? nullptr : &it->second;
    }

    bool has(const std::string& name) const { return map_.count(name) != 0; }

    // Assembly text for each register, used by the .txt form.
    void setRegText(uint32_t id, std::string text) { regtext_[id] = std::move(text); }
    const std::string* regText(uint32_t id) const {
        auto it = regtext_.find(id);
        return it == regtext_.end() ? nullptr : &it->second;
    }

    // Label spelling for a region whose base address has a label binding.
    void setRegionLabel(const std::string& region, std::string label) {
        labels_[region] = std::move(label);
    }
    const std::string* regionLabel(const std::string& region) const {
        auto it = labels_.find(region);
        return it == labels_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, Binding>& bindings() const { return map_; }

private:
    std::map<std::string, Binding> map_;
    std::map<uint32_t, std::string> regtext_;
    std::map<std::string, std::string> labels_;
};

struct RegionInfo {
    int cellWidth;
    int cellCount;
    int ptrWidth;
};

struct MemKey {
    std::string region;
    long long offset;
    auto operator<=>(const MemKey&) const = default;
};

// Mutable machine state: register file and memory. The domains are fixed
// at construction time; evaluation only updates values in place.
struct MachineState {
    // keyed by register id; values are bitvectors of the register's width
    std::map<uint32_t, Value> regs;
    std::map<uint32_t, std::string> regNames;
    // cell values, keyed by (region, byte offset)
    std::map<MemKey, Value> mem;
    std::map<std::string, RegionInfo> regions;

    bool operator==(const MachineState& o) const {
        return regs == o.regs && mem == o.mem;
    }
};

} // namespace casp
