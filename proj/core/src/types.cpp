#include "casp/types.hpp"

namespace casp {

TypePtr mkType(Type::Rep rep) {
    return std::make_shared<const Type>(Type{std::move(rep)});
}

AleTypePtr mkAleType(AleType::Rep rep) {
    return std::make_shared<const AleType>(AleType{std::move(rep)});
}

namespace {

bool ptrVecEq(const std::vector<TypePtr>& a, const std::vector<TypePtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (*a[i] != *b[i]) return false;
    return true;
}

bool aleVecEq(const std::vector<AleTypePtr>& a, const std::vector<AleTypePtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (*a[i] != *b[i]) return false;
    return true;
}

} // namespace

bool operator==(const Type& a, const Type& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace ty;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, UnitT> || std::is_same_v<T, IntT> ||
                          std::is_same_v<T, BoolT> || std::is_same_v<T, StringT>) {
                return true;
            } else if constexpr (std::is_same_v<T, AliasT>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, BVT> || std::is_same_v<T, LocT> ||
                                 std::is_same_v<T, RegSetT> || std::is_same_v<T, LabelT>) {
                return x.width == y.width;
            } else if constexpr (std::is_same_v<T, MemT>) {
                return x.cellWidth == y.cellWidth && x.cellCount == y.cellCount &&
                       x.ptrWidth == y.ptrWidth;
            } else if constexpr (std::is_same_v<T, FuncT>) {
                return ptrVecEq(x.params, y.params) && *x.result == *y.result;
            } else {
                static_assert(std::is_same_v<T, ProcT>);
                return ptrVecEq(x.params, y.params);
            }
        },
        a.rep);
}

bool isBaseType(const Type& t) {
    using namespace ty;
    return t.is<UnitT>() || t.is<IntT>() || t.is<BoolT>() || t.is<StringT>() ||
           t.is<BVT>() || t.is<LocT>() || t.is<RegSetT>() || t.is<LabelT>();
}

bool operator==(const AleType& a, const AleType& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace aty;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, IntT> || std::is_same_v<T, BoolT>) {
                return true;
            } else if constexpr (std::is_same_v<T, AliasT>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, VecT> || std::is_same_v<T, PtrT> ||
                                 std::is_same_v<T, LocT> || std::is_same_v<T, RegSetT> ||
                                 std::is_same_v<T, LabelT>) {
                return x.width == y.width;
            } else if constexpr (std::is_same_v<T, MemT>) {
                return x.cellWidth == y.cellWidth && x.cellCount == y.cellCount &&
                       x.ptrWidth == y.ptrWidth;
            } else {
                static_assert(std::is_same_v<T, FuncT>);
                return aleVecEq(x.params, y.params) && *x.result == *y.result;
            }
        },
        a.rep);
}

} // namespace casp
