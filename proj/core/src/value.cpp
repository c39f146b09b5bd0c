#include "casp/value.hpp"

namespace casp {

void RegSetVal::insert(const RegId& r) {
    auto it = std::lower_bound(regs.begin(), regs.end(), r);
    if (it == regs.end() || !(*it == r))
        regs.insert(it, r);
}

bool RegSetVal::contains(const RegId& r) const {
    return std::binary_search(regs.begin(), regs.end(), r);
}

std::string Value::show() const {
    struct V {
        std::string operator()(const Unit&) const { return "()"; }
        std::string operator()(const Int& i) const { return i.str(); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            return "\"" + s + "\"";
        }
        std::string operator()(const BitVec& b) const {
            return b.toBinaryString();
        }
        std::string operator()(const RegId& r) const {
            return r.name.empty() ? "<r" + std::to_string(r.id) + ">" : r.name;
        }
        std::string operator()(const Pointer& p) const {
            return "[" + p.region + ", " + std::to_string(p.offset) + "]";
        }
        std::string operator()(const RegSetVal& s) const {
            std::string out = "{";
            bool first = true;
            for (const auto& r : s.regs) {
                if (!first) out += ", ";
                first = false;
                out += (*this)(r);
            }
            return out + "}";
        }
        std::string operator()(const FailV&) const { return "fail"; }
    };
    return std::visit(V{}, rep);
}

} // namespace casp
