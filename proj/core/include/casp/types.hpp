#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace casp {

// ---------------------------------------------------------------------
// Cassiopea types

struct Type;
using TypePtr = std::shared_ptr<const Type>;

namespace ty {

struct UnitT {};
struct IntT {};
struct BoolT {};
struct StringT {};
struct AliasT { std::string name; };
struct BVT { int width; };              // C bit
struct LocT { int width; };             // C bit loc (register)
struct RegSetT { int width; };          // C reg set
struct LabelT { int width; };           // C label
struct MemT { int cellWidth; int cellCount; int ptrWidth; };
struct FuncT { std::vector<TypePtr> params; TypePtr result; };
struct ProcT { std::vector<TypePtr> params; };

} // namespace ty

struct Type {
    using Rep = std::variant<ty::UnitT, ty::IntT, ty::BoolT, ty::StringT,
                             ty::AliasT, ty::BVT, ty::LocT, ty::RegSetT,
                             ty::LabelT, ty::MemT, ty::FuncT, ty::ProcT>;
    Rep rep;

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

TypePtr mkType(Type::Rep rep);

inline TypePtr tUnit() { return mkType(ty::UnitT{}); }
inline TypePtr tInt() { return mkType(ty::IntT{}); }
inline TypePtr tBool() { return mkType(ty::BoolT{}); }
inline TypePtr tString() { return mkType(ty::StringT{}); }
inline TypePtr tAlias(std::string n) { return mkType(ty::AliasT{std::move(n)}); }
inline TypePtr tBV(int w) { return mkType(ty::BVT{w}); }
inline TypePtr tLoc(int w) { return mkType(ty::LocT{w}); }
inline TypePtr tRegSet(int w) { return mkType(ty::RegSetT{w}); }
inline TypePtr tLabel(int w) { return mkType(ty::LabelT{w}); }
inline TypePtr tMem(int cw, int n, int pw) { return mkType(ty::MemT{cw, n, pw}); }
inline TypePtr tFunc(std::vector<TypePtr> ps, TypePtr r) {
    return mkType(ty::FuncT{std::move(ps), std::move(r)});
}
inline TypePtr tProc(std::vector<TypePtr> ps) {
    return mkType(ty::ProcT{std::move(ps)});
}

bool isBaseType(const Type& t);

// ---------------------------------------------------------------------
// Alewife types. These mirror the Cassiopea types, except that every width
// position holds a symbolic constant, pointers are distinguished from
// plain vectors, and string/unit are absent.

// Symbolic constant: a literal or an identifier resolved at lowering time.
struct SymConst {
    std::variant<long long, std::string> rep;

    bool isLit() const { return std::holds_alternative<long long>(rep); }
    long long lit() const { return std::get<long long>(rep); }
    const std::string& sym() const { return std::get<std::string>(rep); }

    bool operator==(const SymConst& o) const { return rep == o.rep; }
};

inline SymConst symLit(long long c) { return SymConst{c}; }
inline SymConst symVar(std::string x) { return SymConst{std::move(x)}; }

struct AleType;
using AleTypePtr = std::shared_ptr<const AleType>;

namespace aty {

struct IntT {};
struct BoolT {};
struct AliasT { std::string name; };
struct VecT { SymConst width; };
struct PtrT { SymConst width; };
struct LocT { SymConst width; };
struct RegSetT { SymConst width; };
struct LabelT { SymConst width; };
struct MemT { SymConst cellWidth; SymConst cellCount; SymConst ptrWidth; };
struct FuncT { std::vector<AleTypePtr> params; AleTypePtr result; };

} // namespace aty

struct AleType {
    using Rep = std::variant<aty::IntT, aty::BoolT, aty::AliasT, aty::VecT,
                             aty::PtrT, aty::LocT, aty::RegSetT, aty::LabelT,
                             aty::MemT, aty::FuncT>;
    Rep rep;

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

bool operator==(const AleType& a, const AleType& b);
inline bool operator!=(const AleType& a, const AleType& b) { return !(a == b); }

AleTypePtr mkAleType(AleType::Rep rep);

} // namespace casp
