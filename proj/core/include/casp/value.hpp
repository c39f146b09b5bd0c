#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "casp/bitvec.hpp"

namespace casp {

// Abstract register identity. Allocated by a monotonic counter when a
// letstate declaration is evaluated; `name` is the first bound variable,
// kept for diagnostics only and ignored by comparisons.
struct RegId {
    uint32_t id = 0;
    std::string name;

    bool operator==(const RegId& o) const { return id == o.id; }
    bool operator<(const RegId& o) const { return id < o.id; }
};

// A pointer value: region name plus signed byte offset. Pointers are
// bitvector-width values; `width` records the region's pointer width.
// Out-of-store pointers are representable; fetch/store on them fails.
struct Pointer {
    std::string region;
    long long offset = 0;
    int width = 1;

    bool operator==(const Pointer& o) const {
        return region == o.region && offset == o.offset && width == o.width;
    }
};

// Finite set of register identities, all of one declared width. The width
// is carried explicitly so the empty set is typeable.
struct RegSetVal {
    int width = 1;
    std::vector<RegId> regs; // kept sorted by id, no duplicates

    void insert(const RegId& r);
    bool contains(const RegId& r) const;

    bool operator==(const RegSetVal& o) const {
        return width == o.width && regs == o.regs;
    }
};

struct Unit {
    bool operator==(const Unit&) const { return true; }
};

// The failure value. All dynamic errors in expression evaluation are this
// value; it propagates through every consuming operation.
struct FailV {
    bool operator==(const FailV&) const { return true; }
};

// Runtime value.
struct Value {
    using Rep = std::variant<Unit, Int, bool, std::string, BitVec, RegId,
                             Pointer, RegSetVal, FailV>;
    Rep rep;

    Value() : rep(Unit{}) {}
    Value(Rep r) : rep(std::move(r)) {}

    static Value unit() { return Value(Unit{}); }
    static Value fail() { return Value(FailV{}); }
    static Value ofInt(Int v) { return Value(Rep(std::move(v))); }
    static Value ofBool(bool b) { return Value(Rep(b)); }
    static Value ofString(std::string s) { return Value(Rep(std::move(s))); }
    static Value ofBV(BitVec b) { return Value(Rep(std::move(b))); }
    static Value ofReg(RegId r) { return Value(Rep(std::move(r))); }
    static Value ofPtr(Pointer p) { return Value(Rep(std::move(p))); }
    static Value ofRegSet(RegSetVal s) { return Value(Rep(std::move(s))); }

    bool isFail() const { return std::holds_alternative<FailV>(rep); }

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }

    bool operator==(const Value& o) const { return rep == o.rep; }

    // Concrete-syntax rendering where one exists (literals, pointers).
    std::string show() const;
};

} // namespace casp
