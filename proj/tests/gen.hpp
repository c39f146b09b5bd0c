#pragma once

// Random AST generators shared by the unit tests and the acceptance checks.

#include <random>
#include <string>
#include <vector>

#include <casp/ast.hpp>
#include <casp/interp.hpp>
#include <casp/typecheck.hpp>

namespace gen {

using namespace casp;

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    // uniform in [0, n)
    long long below(long long n) { return (long long)(eng() % (uint64_t)n); }
    // uniform in [lo, hi]
    long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }
    bool coin() { return below(2) == 0; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[(size_t)below((long long)xs.size())];
    }
};

// Identifier pool. Deliberately excludes every keyword, "txt", and the
// operator-prefix spellings "b"/"bs" that the lexer treats specially.
inline const std::vector<std::string>& names() {
    static const std::vector<std::string> ns = {
        "x", "y", "z", "acc", "tmp", "foo", "qux", "r1", "r2", "scratch"};
    return ns;
}

// ---------------------------------------------------------------------
// Free-form generators for the print/parse roundtrip: the trees are only
// syntactically valid, not necessarily well typed.

inline TypePtr genType(Rng& g) {
    switch (g.below(10)) {
    case 0: return tUnit();
    case 1: return tInt();
    case 2: return tBool();
    case 3: return tString();
    case 4: return tAlias(g.pick(names()));
    case 5: return tBV((int)g.range(1, 64));
    case 6: return tLoc((int)g.range(1, 64));
    case 7: return tRegSet((int)g.range(1, 64));
    case 8: return tLabel((int)g.range(1, 64));
    default: return tMem((int)g.range(1, 8) * 8, (int)g.range(1, 16), (int)g.range(1, 64));
    }
}

inline SymConst genWidth(Rng& g) {
    if (g.coin()) return symLit(g.range(1, 64));
    static const std::vector<std::string> ws = {"w", "k", "wordsize"};
    return symVar(g.pick(ws));
}

inline Value genLitValue(Rng& g) {
    switch (g.below(5)) {
    case 0: return Value::ofInt(Int(g.range(0, 1000)));
    case 1: return Value::ofBool(g.coin());
    case 2: return Value::ofString(g.coin() ? "hi" : "a\"b\\c\n\t");
    case 3: return Value::unit();
    default: {
        int w = (int)g.range(1, 12);
        return Value::ofBV(BitVec(w, Int(g.below(1LL << std::min(w, 30)))));
    }
    }
}

inline ExprPtr genExpr(Rng& g, int depth) {
    if (depth <= 0) {
        return g.coin() ? mkExpr(ex::Lit{genLitValue(g)})
                        : mkExpr(ex::Id{g.pick(names())});
    }
    auto sub = [&] { return genExpr(g, depth - 1); };
    switch (g.below(16)) {
    case 0: return mkExpr(ex::Lit{genLitValue(g)});
    case 1: return mkExpr(ex::Id{g.pick(names())});
    case 2: return mkExpr(ex::Deref{sub()});
    case 3: return mkExpr(ex::Fetch{sub(), genWidth(g)});
    case 4: return mkExpr(ex::Index{sub(), g.range(0, 15)});
    case 5: {
        long long lo = g.range(0, 14);
        return mkExpr(ex::Slice{sub(), lo, g.range(lo + 1, 16)});
    }
    case 6:
        return mkExpr(ex::Unop{(UnOp)g.below(3), sub()});
    case 7:
        return mkExpr(ex::Binop{(BinOp)g.below(35), sub(), sub()});
    case 8: {
        std::vector<ExprPtr> args;
        for (long long i = g.below(3); i > 0; --i) args.push_back(sub());
        return mkExpr(ex::App{g.pick(names()), std::move(args)});
    }
    case 9:
        return mkExpr(ex::LetIn{g.pick(names()), genType(g), sub(), sub()});
    case 10:
        return mkExpr(ex::IfE{sub(), sub(), sub()});
    case 11:
        return mkExpr(ex::PtrLit{g.pick(names()), sub()});
    case 12: {
        std::vector<ExprPtr> elems;
        for (long long i = g.range(1, 3); i > 0; --i) elems.push_back(sub());
        return mkExpr(ex::RegSetLit{std::move(elems)});
    }
    case 13: return mkExpr(ex::TxtOf{sub()});
    case 14: return mkExpr(ex::SetSize{sub()});
    default:
        return mkExpr(ex::Quant{g.coin(), g.pick(names()), sub(), sub()});
    }
}

inline StmtPtr genStmt(Rng& g, int depth) {
    auto e = [&] { return genExpr(g, depth > 0 ? 1 : 0); };
    if (depth <= 0) {
        switch (g.below(4)) {
        case 0: return mkStmt(st::Skip{});
        case 1: return mkStmt(st::Crash{});
        case 2: return mkStmt(st::Assert{e()});
        default: return mkStmt(st::RegAssign{e(), e()});
        }
    }
    auto sub = [&] { return genStmt(g, depth - 1); };
    switch (g.below(9)) {
    case 0: return mkStmt(st::Skip{});
    case 1: return mkStmt(st::Assert{e()});
    case 2: return mkStmt(st::RegAssign{e(), e()});
    case 3: return mkStmt(st::Store{e(), genWidth(g), e()});
    case 4: {
        std::vector<StmtPtr> ss;
        for (long long i = g.range(2, 4); i > 0; --i) ss.push_back(sub());
        return mkSeq(std::move(ss));
    }
    case 5: return mkStmt(st::IfS{e(), sub(), sub()});
    case 6: {
        long long lo = g.range(0, 4);
        return mkStmt(st::For{g.pick(names()), lo, g.range(lo, 8), sub()});
    }
    case 7: return mkStmt(st::LetS{g.pick(names()), genType(g), e(), sub()});
    default: {
        std::vector<ExprPtr> args;
        for (long long i = g.below(3); i > 0; --i) args.push_back(e());
        return mkStmt(st::Call{g.pick(names()), std::move(args)});
    }
    }
}

inline std::vector<Param> genParams(Rng& g) {
    std::vector<Param> ps;
    std::vector<std::string> pool = names();
    for (long long i = g.below(3); i > 0; --i) {
        // parameter names must be distinct within one signature
        size_t k = (size_t)g.below((long long)pool.size());
        ps.push_back(Param{pool[k], genType(g)});
        pool.erase(pool.begin() + (long long)k);
    }
    return ps;
}

inline DeclPtr genDecl(Rng& g, int depth = 2) {
    switch (g.below(6)) {
    case 0: return mkDecl(dc::TypeAlias{g.pick(names()), genType(g)});
    case 1: return mkDecl(dc::Let{g.pick(names()), genType(g), genExpr(g, depth)});
    case 2: {
        dc::LetState ls;
        ls.name = g.pick(names());
        if (g.coin()) {
            ls.ty = tLoc((int)g.range(1, 64));
            if (g.coin()) ls.text = "t0";
        } else {
            ls.ty = tMem((int)g.range(1, 8) * 8, (int)g.range(1, 16), (int)g.range(1, 64));
            if (g.coin()) ls.label = g.pick(names());
        }
        return mkDecl(std::move(ls));
    }
    case 3:
        return mkDecl(dc::Def{g.pick(names()), genParams(g), genType(g), genExpr(g, depth)});
    case 4:
        return mkDecl(dc::Proc{g.pick(names()), genParams(g), genStmt(g, depth)});
    default: {
        Defop op;
        op.name = g.pick(names());
        op.params = genParams(g);
        op.txt = genExpr(g, depth - 1);
        op.sem = genStmt(g, depth - 1);
        return mkDecl(dc::Op{std::move(op)});
    }
    }
}

// ---------------------------------------------------------------------
// Well-typed closed expressions over the two-register toy machine, for the
// type-soundness fuzz. Targets cover every base type the machine can name.

inline const char* toyMachineSrc() {
    return R"(
let wordsize : int = 2;;
letstate r1 : 2 bit loc txt "r1";;
letstate r2 : 2 bit loc txt "r2";;
defop MOV [dst: 2 bit loc, src: 2 bit loc] {
  txt = format("mov $1, $2", dst.txt, src.txt),
  sem = *dst <- *src
};;
defop MOVI [dst: 2 bit loc, v: 2 bit] {
  txt = format("movi $1, $2", dst.txt, hex(v)),
  sem = *dst <- v
};;
defop XOR [dst: 2 bit loc, src: 2 bit loc] {
  txt = format("xor $1, $2", dst.txt, src.txt),
  sem = *dst <- *dst bxor *src
};;
defop NOP {
  txt = "nop",
  sem = skip
};;
)";
}

struct TyTarget {
    enum Kind { KInt, KBool, KBV, KString, KLoc, KRegSet } kind;
    int width = 0;  // for KBV; KLoc/KRegSet are always the machine width 2

    TypePtr toType() const {
        switch (kind) {
        case KInt: return tInt();
        case KBool: return tBool();
        case KBV: return tBV(width);
        case KString: return tString();
        case KLoc: return tLoc(2);
        default: return tRegSet(2);
        }
    }
};

inline TyTarget genTarget(Rng& g) {
    switch (g.below(6)) {
    case 0: return {TyTarget::KInt};
    case 1: return {TyTarget::KBool};
    case 2: return {TyTarget::KBV, (int)g.range(1, 4)};
    case 3: return {TyTarget::KString};
    case 4: return {TyTarget::KLoc};
    default: return {TyTarget::KRegSet};
    }
}

inline ExprPtr genTyped(Rng& g, const TyTarget& t, int depth);

inline ExprPtr litInt(long long v) { return mkExpr(ex::Lit{Value::ofInt(Int(v))}); }
inline ExprPtr litBV(int w, long long v) {
    return mkExpr(ex::Lit{Value::ofBV(BitVec(w, Int(v)))});
}

inline ExprPtr genTypedLeaf(Rng& g, const TyTarget& t) {
    switch (t.kind) {
    case TyTarget::KInt:
        return g.coin() ? litInt(g.range(0, 100)) : mkExpr(ex::Id{"wordsize"});
    case TyTarget::KBool:
        return mkExpr(ex::Lit{Value::ofBool(g.coin())});
    case TyTarget::KBV:
        return litBV(t.width, g.below(1LL << t.width));
    case TyTarget::KString:
        return mkExpr(ex::Lit{Value::ofString(g.coin() ? "lo" : "hi")});
    case TyTarget::KLoc:
        return mkExpr(ex::Id{g.coin() ? "r1" : "r2"});
    default:
        return mkExpr(ex::RegSetLit{{mkExpr(ex::Id{"r1"}), mkExpr(ex::Id{"r2"})}});
    }
}

inline ExprPtr genTyped(Rng& g, const TyTarget& t, int depth) {
    if (depth <= 0) return genTypedLeaf(g, t);
    auto same = [&] { return genTyped(g, t, depth - 1); };
    auto of = [&](TyTarget u) { return genTyped(g, u, depth - 1); };
    auto ite = [&] {
        return mkExpr(ex::IfE{of({TyTarget::KBool}), same(), same()});
    };
    auto letin = [&] {
        TyTarget u = genTarget(g);
        return mkExpr(ex::LetIn{"v0", u.toType(), of(u), same()});
    };
    switch (t.kind) {
    case TyTarget::KInt:
        switch (g.below(7)) {
        case 0: return genTypedLeaf(g, t);
        case 1: {
            static const BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div};
            return mkExpr(ex::Binop{ops[g.below(4)], same(), same()});
        }
        case 2: return mkExpr(ex::Unop{UnOp::Neg, same()});
        case 3: return mkExpr(ex::App{"bv_to_uint", {of({TyTarget::KBV, (int)g.range(1, 4)})}});
        case 4: return mkExpr(ex::SetSize{of({TyTarget::KRegSet})});
        case 5: return ite();
        default: return letin();
        }
    case TyTarget::KBool:
        switch (g.below(8)) {
        case 0: return genTypedLeaf(g, t);
        case 1: {
            static const BinOp ops[] = {BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};
            return mkExpr(ex::Binop{ops[g.below(4)], of({TyTarget::KInt}), of({TyTarget::KInt})});
        }
        case 2: {
            TyTarget u = genTarget(g);
            return mkExpr(ex::Binop{g.coin() ? BinOp::Eq : BinOp::Ne, of(u), of(u)});
        }
        case 3: {
            static const BinOp ops[] = {BinOp::LAnd, BinOp::LOr, BinOp::LXor};
            return mkExpr(ex::Binop{ops[g.below(3)], same(), same()});
        }
        case 4: return mkExpr(ex::Unop{UnOp::LNot, same()});
        case 5: {
            static const BinOp ops[] = {BinOp::BULt, BinOp::BULe, BinOp::BUGt, BinOp::BUGe,
                                        BinOp::BSLt, BinOp::BSLe, BinOp::BSGt, BinOp::BSGe};
            TyTarget u{TyTarget::KBV, (int)g.range(1, 4)};
            return mkExpr(ex::Binop{ops[g.below(8)], of(u), of(u)});
        }
        case 6: {
            if (g.coin())
                return mkExpr(ex::Binop{BinOp::InSet, of({TyTarget::KLoc}),
                                        of({TyTarget::KRegSet})});
            return mkExpr(ex::Binop{BinOp::Subseteq, of({TyTarget::KRegSet}),
                                    of({TyTarget::KRegSet})});
        }
        default: return g.coin() ? ite() : letin();
        }
    case TyTarget::KBV:
        switch (g.below(8)) {
        case 0: return genTypedLeaf(g, t);
        case 1: {
            static const BinOp ops[] = {BinOp::BAdd, BinOp::BSub, BinOp::BMul, BinOp::BDiv,
                                        BinOp::BAnd, BinOp::BOr, BinOp::BXor,
                                        BinOp::Shl, BinOp::Shr, BinOp::Sar};
            return mkExpr(ex::Binop{ops[g.below(10)], same(), same()});
        }
        case 2: return mkExpr(ex::Unop{UnOp::BNot, same()});
        case 3:
            if (t.width == 2) return mkExpr(ex::Deref{of({TyTarget::KLoc})});
            return genTypedLeaf(g, t);
        case 4:
            return mkExpr(ex::App{"uint_to_bv_l", {litInt(t.width), of({TyTarget::KInt})}});
        case 5: {
            TyTarget u{TyTarget::KBV, (int)g.range(1, 4)};
            return mkExpr(ex::App{"bv_to_len", {litInt(t.width), of(u)}});
        }
        case 6: {
            if (t.width == 1) {
                TyTarget u{TyTarget::KBV, (int)g.range(1, 4)};
                return mkExpr(ex::Index{of(u), g.below(u.width)});
            }
            TyTarget u{TyTarget::KBV, (int)g.range(t.width, 4)};
            long long lo = g.range(0, u.width - t.width);
            return mkExpr(ex::Slice{of(u), lo, lo + t.width});
        }
        default: return g.coin() ? ite() : letin();
        }
    case TyTarget::KString:
        switch (g.below(5)) {
        case 0: return genTypedLeaf(g, t);
        case 1: return mkExpr(ex::TxtOf{of({TyTarget::KLoc})});
        case 2: {
            static const char* fns[] = {"hex", "bin", "dec"};
            TyTarget u = g.coin() ? TyTarget{TyTarget::KInt}
                                  : TyTarget{TyTarget::KBV, (int)g.range(1, 4)};
            return mkExpr(ex::App{fns[g.below(3)], {of(u)}});
        }
        case 3: return mkExpr(ex::App{"format",
                                      {mkExpr(ex::Lit{Value::ofString("v=$1")}), same()}});
        default: return ite();
        }
    case TyTarget::KLoc:
        return g.below(3) == 0 ? ite() : genTypedLeaf(g, t);
    default:  // KRegSet
        switch (g.below(4)) {
        case 0: return genTypedLeaf(g, t);
        case 1: {
            static const BinOp ops[] = {BinOp::Union, BinOp::Intersect, BinOp::SetMinus};
            return mkExpr(ex::Binop{ops[g.below(3)], same(), same()});
        }
        case 2: return mkExpr(ex::App{"empty", {litInt(2)}});
        default: return ite();
        }
    }
}

// Checks a runtime value against a resolved static type. The failure value
// is allowed at any type.
inline bool valueMatches(const Value& v, const Type& t) {
    if (v.isFail()) return true;
    using namespace ty;
    if (t.is<IntT>()) return v.is<Int>();
    if (t.is<BoolT>()) return v.is<bool>();
    if (t.is<StringT>()) return v.is<std::string>();
    if (t.is<UnitT>()) return v.is<Unit>();
    if (t.is<BVT>())
        return (v.is<BitVec>() && v.as<BitVec>().width() == t.as<BVT>().width) ||
               (v.is<Pointer>() && v.as<Pointer>().width == t.as<BVT>().width);
    if (t.is<LocT>()) return v.is<RegId>();
    if (t.is<RegSetT>())
        return v.is<RegSetVal>() && v.as<RegSetVal>().width == t.as<RegSetT>().width;
    if (t.is<LabelT>()) return v.is<Pointer>();
    return false;
}

} // namespace gen
