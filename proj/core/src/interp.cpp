#include "casp/interp.hpp"

#include <limits>
#include <optional>

#include "casp/builtins.hpp"

namespace casp {

namespace {

const Value kFail = Value::fail();

// Word width of a register- or cell-sized value, if it is one.
std::optional<int> wordWidth(const Value& v) {
    if (v.is<BitVec>()) return v.as<BitVec>().width();
    if (v.is<Pointer>()) return v.as<Pointer>().width;
    return std::nullopt;
}

std::optional<long long> toOffset(const Value& v) {
    if (v.is<Int>()) {
        const Int& i = v.as<Int>();
        if (i < std::numeric_limits<long long>::min() ||
            i > std::numeric_limits<long long>::max())
            return std::nullopt;
        return (long long)i;
    }
    if (v.is<BitVec>()) {
        Int u = v.as<BitVec>().toUnsigned();
        if (u > std::numeric_limits<long long>::max()) return std::nullopt;
        return (long long)u;
    }
    return std::nullopt;
}

Value evalBinop(BinOp op, const Value& a, const Value& b) {
    using enum BinOp;

    // equality is total on matching base types; a number/pointer mix
    // compares unequal rather than failing
    if (op == Eq || op == Ne) {
        bool eq;
        if ((a.is<BitVec>() && b.is<Pointer>()) ||
            (a.is<Pointer>() && b.is<BitVec>()))
            eq = false;
        else if (a.rep.index() == b.rep.index())
            eq = (a == b);
        else
            return kFail;
        return Value::ofBool(op == Eq ? eq : !eq);
    }

    switch (op) {
    case Add:
    case Sub:
    case Mul:
    case Div: {
        if (!a.is<Int>() || !b.is<Int>()) return kFail;
        const Int &x = a.as<Int>(), &y = b.as<Int>();
        switch (op) {
        case Add: return Value::ofInt(x + y);
        case Sub: return Value::ofInt(x - y);
        case Mul: return Value::ofInt(x * y);
        default:
            if (y == 0) return kFail;
            return Value::ofInt(x / y);  // truncates toward zero
        }
    }
    case Lt:
    case Le:
    case Gt:
    case Ge: {
        if (!a.is<Int>() || !b.is<Int>()) return kFail;
        const Int &x = a.as<Int>(), &y = b.as<Int>();
        switch (op) {
        case Lt: return Value::ofBool(x < y);
        case Le: return Value::ofBool(x <= y);
        case Gt: return Value::ofBool(x > y);
        default: return Value::ofBool(x >= y);
        }
    }
    case LAnd:
    case LOr:
    case LXor: {
        if (!a.is<bool>() || !b.is<bool>()) return kFail;
        bool x = a.as<bool>(), y = b.as<bool>();
        switch (op) {
        case LAnd: return Value::ofBool(x && y);
        case LOr: return Value::ofBool(x || y);
        default: return Value::ofBool(x != y);
        }
    }
    case BAdd: {
        // pointer displacement: the bitvector side is an unsigned byte count
        if (a.is<Pointer>() && b.is<BitVec>()) {
            const auto& p = a.as<Pointer>();
            const auto& d = b.as<BitVec>();
            if (d.width() != p.width) return kFail;
            auto off = toOffset(Value::ofBV(d));
            if (!off) return kFail;
            return Value::ofPtr(Pointer{p.region, p.offset + *off, p.width});
        }
        if (a.is<BitVec>() && b.is<Pointer>()) return evalBinop(BAdd, b, a);
        if (a.is<BitVec>() && b.is<BitVec>()) {
            const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
            if (x.width() != y.width()) return kFail;
            return Value::ofBV(x.add(y));
        }
        return kFail;
    }
    case BSub: {
        if (a.is<Pointer>() && b.is<BitVec>()) {
            const auto& p = a.as<Pointer>();
            const auto& d = b.as<BitVec>();
            if (d.width() != p.width) return kFail;
            auto off = toOffset(Value::ofBV(d));
            if (!off) return kFail;
            return Value::ofPtr(Pointer{p.region, p.offset - *off, p.width});
        }
        if (a.is<Pointer>() && b.is<Pointer>()) {
            const auto &p = a.as<Pointer>(), &q = b.as<Pointer>();
            if (p.region != q.region || p.width != q.width) return kFail;
            return Value::ofBV(BitVec(p.width, Int(p.offset) - Int(q.offset)));
        }
        if (a.is<BitVec>() && b.is<BitVec>()) {
            const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
            if (x.width() != y.width()) return kFail;
            return Value::ofBV(x.sub(y));
        }
        return kFail;
    }
    case BMul:
    case BDiv: {
        if (!a.is<BitVec>() || !b.is<BitVec>()) return kFail;  // no pointer scaling
        const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
        if (x.width() != y.width()) return kFail;
        if (op == BMul) return Value::ofBV(x.mul(y));
        auto q = x.udiv(y);
        return q ? Value::ofBV(*q) : kFail;
    }
    case Shl:
    case Shr:
    case Sar:
    case BAnd:
    case BOr:
    case BXor: {
        if (!a.is<BitVec>() || !b.is<BitVec>()) return kFail;
        const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
        if (x.width() != y.width()) return kFail;
        switch (op) {
        case Shl: return Value::ofBV(x.shl(y));
        case Shr: return Value::ofBV(x.lshr(y));
        case Sar: return Value::ofBV(x.ashr(y));
        case BAnd: return Value::ofBV(x.band(y));
        case BOr: return Value::ofBV(x.bor(y));
        default: return Value::ofBV(x.bxor(y));
        }
    }
    case BULt:
    case BULe:
    case BUGt:
    case BUGe: {
        if (!a.is<BitVec>() || !b.is<BitVec>()) return kFail;
        const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
        if (x.width() != y.width()) return kFail;
        Int u = x.toUnsigned(), v = y.toUnsigned();
        switch (op) {
        case BULt: return Value::ofBool(u < v);
        case BULe: return Value::ofBool(u <= v);
        case BUGt: return Value::ofBool(u > v);
        default: return Value::ofBool(u >= v);
        }
    }
    case BSLt:
    case BSLe:
    case BSGt:
    case BSGe: {
        if (!a.is<BitVec>() || !b.is<BitVec>()) return kFail;
        const auto &x = a.as<BitVec>(), &y = b.as<BitVec>();
        if (x.width() != y.width()) return kFail;
        Int u = x.toSigned(), v = y.toSigned();
        switch (op) {
        case BSLt: return Value::ofBool(u < v);
        case BSLe: return Value::ofBool(u <= v);
        case BSGt: return Value::ofBool(u > v);
        default: return Value::ofBool(u >= v);
        }
    }
    case Union:
    case Intersect:
    case SetMinus: {
        if (!a.is<RegSetVal>() || !b.is<RegSetVal>()) return kFail;
        const auto &x = a.as<RegSetVal>(), &y = b.as<RegSetVal>();
        if (x.width != y.width) return kFail;
        RegSetVal out{x.width, {}};
        for (const auto& r : x.regs) {
            bool inY = y.contains(r);
            if (op == Union || (op == Intersect && inY) ||
                (op == SetMinus && !inY))
                out.insert(r);
        }
        if (op == Union)
            for (const auto& r : y.regs) out.insert(r);
        return Value::ofRegSet(std::move(out));
    }
    case Subseteq: {
        if (!a.is<RegSetVal>() || !b.is<RegSetVal>()) return kFail;
        const auto &x = a.as<RegSetVal>(), &y = b.as<RegSetVal>();
        if (x.width != y.width) return kFail;
        for (const auto& r : x.regs)
            if (!y.contains(r)) return Value::ofBool(false);
        return Value::ofBool(true);
    }
    case InSet: {
        if (!a.is<RegId>() || !b.is<RegSetVal>()) return kFail;
        return Value::ofBool(b.as<RegSetVal>().contains(a.as<RegId>()));
    }
    default:
        return kFail;
    }
}

} // namespace

Value evalExpr(const Expr& e, const Interp& I, const Scope& sc) {
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Lit>) {
                return x.v;
            } else if constexpr (std::is_same_v<T, Id>) {
                if (const Value* v = sc.lookup(x.name)) return *v;
                const Env::Binding* b = I.env.lookup(x.name);
                if (!b || !std::holds_alternative<Value>(*b)) return kFail;
                return std::get<Value>(*b);
            } else if constexpr (std::is_same_v<T, Deref>) {
                Value v = evalExpr(*x.e, I, sc);
                if (!v.is<RegId>()) return kFail;
                auto it = I.state.regs.find(v.as<RegId>().id);
                return it == I.state.regs.end() ? kFail : it->second;
            } else if constexpr (std::is_same_v<T, Fetch>) {
                if (!x.width.isLit()) return kFail;
                Value a = evalExpr(*x.addr, I, sc);
                if (!a.is<Pointer>()) return kFail;
                const auto& p = a.as<Pointer>();
                auto ri = I.state.regions.find(p.region);
                if (ri == I.state.regions.end()) return kFail;
                if (ri->second.cellWidth != (int)x.width.lit()) return kFail;
                auto it = I.state.mem.find(MemKey{p.region, p.offset});
                return it == I.state.mem.end() ? kFail : it->second;
            } else if constexpr (std::is_same_v<T, Index>) {
                Value v = evalExpr(*x.e, I, sc);
                if (!v.is<BitVec>()) return kFail;  // no bit access on pointers
                const auto& b = v.as<BitVec>();
                if (x.idx < 0 || x.idx >= b.width()) return kFail;
                return Value::ofBV(BitVec(1, b.bit((int)x.idx) ? 1 : 0));
            } else if constexpr (std::is_same_v<T, Slice>) {
                Value v = evalExpr(*x.e, I, sc);
                if (!v.is<BitVec>()) return kFail;
                const auto& b = v.as<BitVec>();
                if (!(0 <= x.lo && x.lo < x.hi && x.hi <= b.width())) return kFail;
                return Value::ofBV(b.slice((int)x.lo, (int)x.hi));
            } else if constexpr (std::is_same_v<T, Unop>) {
                Value v = evalExpr(*x.e, I, sc);
                if (v.isFail()) return kFail;
                switch (x.op) {
                case UnOp::Neg:
                    return v.is<Int>() ? Value::ofInt(-v.as<Int>()) : kFail;
                case UnOp::LNot:
                    return v.is<bool>() ? Value::ofBool(!v.as<bool>()) : kFail;
                case UnOp::BNot:
                    return v.is<BitVec>() ? Value::ofBV(v.as<BitVec>().bnot()) : kFail;
                }
                return kFail;
            } else if constexpr (std::is_same_v<T, Binop>) {
                Value a = evalExpr(*x.lhs, I, sc);
                if (a.isFail()) return kFail;
                Value b = evalExpr(*x.rhs, I, sc);
                if (b.isFail()) return kFail;
                return evalBinop(x.op, a, b);
            } else if constexpr (std::is_same_v<T, App>) {
                std::vector<Value> args;
                for (const auto& a : x.args) {
                    args.push_back(evalExpr(*a, I, sc));
                    if (args.back().isFail()) return kFail;
                }
                if (isBuiltin(x.fn)) return callBuiltin(x.fn, args, I);
                const Env::Binding* b = I.env.lookup(x.fn);
                if (!b || !std::holds_alternative<FuncClosure>(*b)) return kFail;
                const auto& fc = std::get<FuncClosure>(*b);
                if (fc.params.size() != args.size()) return kFail;
                Scope frame;
                for (size_t i = 0; i < args.size(); ++i)
                    frame.vars[fc.params[i].name] = args[i];
                return evalExpr(*fc.body, I, frame);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                Value v = evalExpr(*x.bind, I, sc);
                if (v.isFail()) return kFail;
                Scope inner = sc;
                inner.vars[x.name] = v;
                return evalExpr(*x.body, I, inner);
            } else if constexpr (std::is_same_v<T, IfE>) {
                Value c = evalExpr(*x.cond, I, sc);
                if (!c.is<bool>()) return kFail;
                return evalExpr(c.as<bool>() ? *x.then_ : *x.else_, I, sc);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                auto ri = I.state.regions.find(x.region);
                if (ri == I.state.regions.end()) return kFail;
                Value off = evalExpr(*x.off, I, sc);
                auto o = toOffset(off);
                if (!o) return kFail;
                return Value::ofPtr(Pointer{x.region, *o, ri->second.ptrWidth});
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                RegSetVal out;
                int width = -1;
                for (const auto& el : x.elems) {
                    Value v = evalExpr(*el, I, sc);
                    if (!v.is<RegId>()) return kFail;
                    const RegId& r = v.as<RegId>();
                    auto it = I.state.regs.find(r.id);
                    if (it == I.state.regs.end()) return kFail;
                    auto w = wordWidth(it->second);
                    if (!w) return kFail;
                    if (width == -1) width = *w;
                    else if (width != *w) return kFail;
                    out.insert(r);
                }
                out.width = width == -1 ? 1 : width;
                return Value::ofRegSet(std::move(out));
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                Value v = evalExpr(*x.e, I, sc);
                if (!v.is<RegId>()) return kFail;
                const std::string* t = I.env.regText(v.as<RegId>().id);
                return t ? Value::ofString(*t) : kFail;
            } else if constexpr (std::is_same_v<T, SetSize>) {
                Value v = evalExpr(*x.e, I, sc);
                if (!v.is<RegSetVal>()) return kFail;
                return Value::ofInt(Int(v.as<RegSetVal>().regs.size()));
            } else {
                static_assert(std::is_same_v<T, Quant>);
                // quantifiers are a spec-language form; lowering removes them
                return kFail;
            }
        },
        e.rep);
}

Outcome execStmt(const Stmt& s, Interp& I, Scope& sc) {
    using namespace st;
    return std::visit(
        [&](const auto& x) -> Outcome {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return Outcome::Done;
            } else if constexpr (std::is_same_v<T, Crash>) {
                return Outcome::Crash;
            } else if constexpr (std::is_same_v<T, Assert>) {
                Value v = evalExpr(*x.e, I, sc);
                return (v.is<bool>() && v.as<bool>()) ? Outcome::Done : Outcome::Crash;
            } else if constexpr (std::is_same_v<T, RegAssign>) {
                Value loc = evalExpr(*x.loc, I, sc);
                if (!loc.is<RegId>()) return Outcome::Crash;
                auto it = I.state.regs.find(loc.as<RegId>().id);
                if (it == I.state.regs.end()) return Outcome::Crash;
                Value v = evalExpr(*x.val, I, sc);
                auto w = wordWidth(v);
                auto cur = wordWidth(it->second);
                if (!w || !cur || *w != *cur) return Outcome::Crash;
                it->second = std::move(v);
                return Outcome::Done;
            } else if constexpr (std::is_same_v<T, Store>) {
                if (!x.width.isLit()) return Outcome::Crash;
                Value a = evalExpr(*x.addr, I, sc);
                if (!a.is<Pointer>()) return Outcome::Crash;
                const auto& p = a.as<Pointer>();
                auto ri = I.state.regions.find(p.region);
                if (ri == I.state.regions.end()) return Outcome::Crash;
                if (ri->second.cellWidth != (int)x.width.lit()) return Outcome::Crash;
                auto it = I.state.mem.find(MemKey{p.region, p.offset});
                if (it == I.state.mem.end()) return Outcome::Crash;
                Value v = evalExpr(*x.val, I, sc);
                auto w = wordWidth(v);
                if (!w || *w != ri->second.cellWidth) return Outcome::Crash;
                it->second = std::move(v);
                return Outcome::Done;
            } else if constexpr (std::is_same_v<T, Seq>) {
                for (const auto& sub : x.stmts)
                    if (execStmt(*sub, I, sc) == Outcome::Crash) return Outcome::Crash;
                return Outcome::Done;
            } else if constexpr (std::is_same_v<T, IfS>) {
                Value c = evalExpr(*x.cond, I, sc);
                if (!c.is<bool>()) return Outcome::Crash;
                return execStmt(c.as<bool>() ? *x.then_ : *x.else_, I, sc);
            } else if constexpr (std::is_same_v<T, For>) {
                for (long long i = x.lo; i <= x.hi; ++i) {
                    Scope inner = sc;
                    inner.vars[x.var] = Value::ofInt(Int(i));
                    if (execStmt(*x.body, I, inner) == Outcome::Crash)
                        return Outcome::Crash;
                }
                return Outcome::Done;
            } else if constexpr (std::is_same_v<T, LetS>) {
                Scope inner = sc;
                inner.vars[x.name] = evalExpr(*x.bind, I, sc);
                return execStmt(*x.body, I, inner);
            } else {
                static_assert(std::is_same_v<T, Call>);
                const Env::Binding* b = I.env.lookup(x.name);
                if (!b || !std::holds_alternative<ProcClosure>(*b))
                    throw Diag("UnknownProc", "no procedure '" + x.name + "'", s.pos);
                const auto& pc = std::get<ProcClosure>(*b);
                if (pc.params.size() != x.args.size())
                    throw Diag("BadArity", "wrong argument count for '" + x.name + "'",
                               s.pos);
                Scope frame;
                for (size_t i = 0; i < x.args.size(); ++i)
                    frame.vars[pc.params[i].name] = evalExpr(*x.args[i], I, sc);
                return execStmt(*pc.body, I, frame);
            }
        },
        s.rep);
}

TypePtr Interp::resolve(const TypePtr& t) const {
    TypePtr cur = t;
    int hops = 0;
    while (cur && cur->is<ty::AliasT>()) {
        auto it = aliases.find(cur->as<ty::AliasT>().name);
        if (it == aliases.end())
            throw Diag("UnknownType", "unknown type '" + cur->as<ty::AliasT>().name + "'");
        cur = it->second;
        if (++hops > 64) throw Diag("UnknownType", "alias chain too deep");
    }
    return cur;
}

void Interp::addDecl(const DeclPtr& d, Filter f) {
    using namespace dc;
    owned_.push_back(d);
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TypeAlias>) {
                aliases[x.name] = x.ty;
            } else if constexpr (std::is_same_v<T, Let>) {
                if (f == Filter::StateOnly) return;
                Scope empty;
                Value v = evalExpr(*x.e, *this, empty);
                if (v.isFail())
                    throw Diag("EvaluationFailed",
                               "initializer of '" + x.name + "' failed", d->pos);
                env.bind(x.name, v, d->pos);
            } else if constexpr (std::is_same_v<T, LetState>) {
                if (f == Filter::ValueOnly) return;
                TypePtr ty = resolve(x.ty);
                if (ty->is<ty::LocT>()) {
                    int w = ty->as<ty::LocT>().width;
                    RegId r{nextReg++, x.name};
                    state.regs[r.id] = Value::ofBV(BitVec::zeros(w));
                    state.regNames[r.id] = x.name;
                    env.setRegText(r.id, x.text.value_or(x.name));
                    env.bind(x.name, Value::ofReg(r), d->pos);
                } else if (ty->is<ty::MemT>()) {
                    const auto& m = ty->as<ty::MemT>();
                    if (state.regions.count(x.name))
                        throw Diag("DuplicateBinding",
                                   "region '" + x.name + "' is already declared",
                                   d->pos);
                    state.regions[x.name] =
                        RegionInfo{m.cellWidth, m.cellCount, m.ptrWidth};
                    long long stride = m.cellWidth / 8;
                    for (int k = 0; k < m.cellCount; ++k)
                        state.mem[MemKey{x.name, k * stride}] =
                            Value::ofBV(BitVec::zeros(m.cellWidth));
                    if (x.label) {
                        env.bind(*x.label,
                                 Value::ofPtr(Pointer{x.name, 0, m.ptrWidth}), d->pos);
                        env.setRegionLabel(x.name, *x.label);
                    }
                } else {
                    throw Diag("BadStateType",
                               "letstate requires a register or memory type", d->pos);
                }
            } else if constexpr (std::is_same_v<T, Def>) {
                if (f == Filter::StateOnly) return;
                env.bind(x.name, FuncClosure{x.params, x.ret, x.body}, d->pos);
            } else if constexpr (std::is_same_v<T, Proc>) {
                if (f == Filter::StateOnly) return;
                env.bind(x.name, ProcClosure{x.params, x.body}, d->pos);
            } else {
                static_assert(std::is_same_v<T, Op>);
                if (f == Filter::StateOnly) return;
                env.bind(x.op.name, OpRef{&x.op}, d->pos);
            }
        },
        d->rep);
}

void Interp::addDecls(const std::vector<DeclPtr>& ds, Filter f) {
    for (const auto& d : ds) addDecl(d, f);
}

Outcome runProgram(const Program& p, Interp& I) {
    for (const auto& inst : p.insts) {
        const Env::Binding* b = I.env.lookup(inst.op);
        if (!b || !std::holds_alternative<OpRef>(*b))
            throw Diag("UnknownOp", "no operation '" + inst.op + "'", inst.pos);
        const Defop& op = *std::get<OpRef>(*b).op;
        if (op.params.size() != inst.args.size())
            throw Diag("BadArity", "operation '" + inst.op + "' takes " +
                                       std::to_string(op.params.size()) + " operands",
                       inst.pos);
        Scope frame;
        Scope empty;
        for (size_t i = 0; i < inst.args.size(); ++i)
            frame.vars[op.params[i].name] = evalExpr(*inst.args[i], I, empty);
        if (execStmt(*op.sem, I, frame) == Outcome::Crash) return Outcome::Crash;
    }
    return Outcome::Done;
}

Value extractText(const Program& p, const Interp& I) {
    std::string out;
    for (const auto& inst : p.insts) {
        const Env::Binding* b = I.env.lookup(inst.op);
        if (!b || !std::holds_alternative<OpRef>(*b))
            throw Diag("UnknownOp", "no operation '" + inst.op + "'", inst.pos);
        const Defop& op = *std::get<OpRef>(*b).op;
        if (op.params.size() != inst.args.size())
            throw Diag("BadArity", "operation '" + inst.op + "' takes " +
                                       std::to_string(op.params.size()) + " operands",
                       inst.pos);
        Scope frame;
        Scope empty;
        for (size_t i = 0; i < inst.args.size(); ++i)
            frame.vars[op.params[i].name] = evalExpr(*inst.args[i], I, empty);
        Value t = evalExpr(*op.txt, I, frame);
        if (!t.is<std::string>()) return Value::fail();
        out += t.as<std::string>();
        out += "\n";
    }
    return Value::ofString(out);
}

} // namespace casp
