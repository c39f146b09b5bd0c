#include "casp/typecheck.hpp"

#include "casp/builtins.hpp"

namespace casp {

namespace {

struct Tc {
    TypeEnvs envs;
    bool stateOk = true;        // may the current form read machine state?
    // local bindings layered over envs.delta
    std::map<std::string, TypePtr> locals;

    const TypePtr* lookup(const std::string& name) const {
        auto it = locals.find(name);
        if (it != locals.end()) return &it->second;
        auto jt = envs.delta.find(name);
        return jt == envs.delta.end() ? nullptr : &jt->second;
    }
};

[[noreturn]] void fail(const char* code, const std::string& msg, Pos pos) {
    throw Diag(code, msg, pos);
}

TypePtr resolve(const TypePtr& t, const TypeEnvs& envs, Pos pos) {
    TypePtr cur = t;
    int hops = 0;
    while (cur->is<ty::AliasT>()) {
        auto it = envs.gamma.find(cur->as<ty::AliasT>().name);
        if (it == envs.gamma.end())
            fail("UnknownType", "unknown type '" + cur->as<ty::AliasT>().name + "'",
                 pos);
        cur = it->second;
        if (++hops > 64) fail("UnknownType", "alias chain too deep", pos);
    }
    return cur;
}

void checkWf(const TypePtr& t, Pos pos) {
    using namespace ty;
    if (t->is<BVT>() && t->as<BVT>().width < 1)
        fail("BadWidth", "bitvector width must be positive", pos);
    if (t->is<LocT>() && t->as<LocT>().width < 1)
        fail("BadWidth", "register width must be positive", pos);
    if (t->is<RegSetT>() && t->as<RegSetT>().width < 1)
        fail("BadWidth", "register set width must be positive", pos);
    if (t->is<LabelT>() && t->as<LabelT>().width < 1)
        fail("BadWidth", "label width must be positive", pos);
    if (t->is<MemT>()) {
        const auto& m = t->as<MemT>();
        if (m.cellWidth < 1 || m.cellCount < 1 || m.ptrWidth < 1)
            fail("BadWidth", "memory widths and length must be positive", pos);
        if (m.cellWidth % 8 != 0)
            fail("BadWidth", "memory cell width must be a whole number of bytes",
                 pos);
    }
}

// Labels denote constant addresses; where a bitvector is expected, a label
// of the same width is accepted.
TypePtr subsume(const TypePtr& t) {
    if (t->is<ty::LabelT>()) return tBV(t->as<ty::LabelT>().width);
    return t;
}

bool compat(const TypePtr& expected, const TypePtr& actual) {
    if (*expected == *actual) return true;
    return *expected == *subsume(actual);
}

TypePtr tc(const Expr& e, Tc& c);

TypePtr requireBV(const Expr& e, Tc& c, const char* what) {
    TypePtr t = subsume(tc(e, c));
    if (!t->is<ty::BVT>())
        fail("TypeError", std::string(what) + " must be a bitvector", e.pos);
    return t;
}

long long litWidth(const SymConst& w, Pos pos) {
    if (!w.isLit()) fail("SymbolicWidth", "width '" + w.sym() + "' is not a constant", pos);
    if (w.lit() < 1) fail("BadWidth", "width must be positive", pos);
    return w.lit();
}

bool isIntLit(const Expr& e) {
    return e.is<ex::Lit>() && e.as<ex::Lit>().v.is<Int>();
}

long long intLit(const Expr& e) {
    return (long long)e.as<ex::Lit>().v.as<Int>();
}

TypePtr tcBuiltin(const ex::App& x, const Expr& e, Tc& c) {
    auto arity = [&](size_t n) {
        if (x.args.size() != n)
            fail("TypeError", "'" + x.fn + "' takes " + std::to_string(n) +
                                  " arguments", e.pos);
    };
    if (x.fn == "empty") {
        arity(1);
        if (!isIntLit(*x.args[0]))
            fail("TypeError", "'empty' takes a constant width", e.pos);
        long long w = intLit(*x.args[0]);
        if (w < 1) fail("BadWidth", "width must be positive", e.pos);
        return tRegSet((int)w);
    }
    if (x.fn == "hex" || x.fn == "bin" || x.fn == "dec") {
        arity(1);
        TypePtr t = subsume(tc(*x.args[0], c));
        if (!t->is<ty::IntT>() && !t->is<ty::BVT>())
            fail("TypeError", "'" + x.fn + "' takes an int or bitvector", e.pos);
        return tString();
    }
    if (x.fn == "lbl") {
        arity(1);
        TypePtr t = tc(*x.args[0], c);
        if (!t->is<ty::LabelT>())
            fail("TypeError", "'lbl' takes a label", e.pos);
        return tString();
    }
    if (x.fn == "format") {
        if (x.args.empty())
            fail("TypeError", "'format' needs a format string", e.pos);
        for (const auto& a : x.args) {
            TypePtr t = tc(*a, c);
            if (!t->is<ty::StringT>())
                fail("TypeError", "'format' arguments must be strings", a->pos);
        }
        return tString();
    }
    if (x.fn == "bv_to_len") {
        arity(2);
        if (!isIntLit(*x.args[0]))
            fail("TypeError", "'bv_to_len' takes a constant width", e.pos);
        long long w = intLit(*x.args[0]);
        if (w < 1) fail("BadWidth", "width must be positive", e.pos);
        requireBV(*x.args[1], c, "'bv_to_len' argument");
        return tBV((int)w);
    }
    if (x.fn == "bv_to_uint") {
        arity(1);
        requireBV(*x.args[0], c, "'bv_to_uint' argument");
        return tInt();
    }
    if (x.fn == "uint_to_bv_l") {
        arity(2);
        if (!isIntLit(*x.args[0]))
            fail("TypeError", "'uint_to_bv_l' takes a constant width", e.pos);
        long long w = intLit(*x.args[0]);
        if (w < 1) fail("BadWidth", "width must be positive", e.pos);
        if (!tc(*x.args[1], c)->is<ty::IntT>())
            fail("TypeError", "'uint_to_bv_l' takes an int", e.pos);
        return tBV((int)w);
    }
    if (x.fn == "isptr") {
        arity(1);
        requireBV(*x.args[0], c, "'isptr' argument");
        return tBool();
    }
    fail("TypeError", "unknown builtin '" + x.fn + "'", e.pos);
}

TypePtr tcBinop(const ex::Binop& x, const Expr& e, Tc& c) {
    using enum BinOp;
    TypePtr lt = tc(*x.lhs, c);
    TypePtr rt = tc(*x.rhs, c);
    auto both = [&](const TypePtr& want) {
        return compat(want, lt) && compat(want, rt);
    };
    switch (x.op) {
    case Add:
    case Sub:
    case Mul:
    case Div:
        if (!both(tInt())) fail("TypeError", "integer operands required", e.pos);
        return tInt();
    case Lt:
    case Le:
    case Gt:
    case Ge:
        if (!both(tInt())) fail("TypeError", "integer operands required", e.pos);
        return tBool();
    case Eq:
    case Ne: {
        TypePtr a = subsume(lt), b = subsume(rt);
        if (!(*a == *b) || !isBaseType(*a))
            fail("TypeError", "equality needs operands of one base type", e.pos);
        return tBool();
    }
    case LAnd:
    case LOr:
    case LXor:
        if (!both(tBool())) fail("TypeError", "boolean operands required", e.pos);
        return tBool();
    case BAdd:
    case BSub:
    case BMul:
    case BDiv:
    case Shl:
    case Shr:
    case Sar:
    case BAnd:
    case BOr:
    case BXor: {
        TypePtr a = subsume(lt), b = subsume(rt);
        if (!a->is<ty::BVT>() || !(*a == *b))
            fail("TypeError", "bitvector operands of one width required", e.pos);
        return a;
    }
    case BULt:
    case BULe:
    case BUGt:
    case BUGe:
    case BSLt:
    case BSLe:
    case BSGt:
    case BSGe: {
        TypePtr a = subsume(lt), b = subsume(rt);
        if (!a->is<ty::BVT>() || !(*a == *b))
            fail("TypeError", "bitvector operands of one width required", e.pos);
        return tBool();
    }
    case Union:
    case Intersect:
    case SetMinus:
        if (!lt->is<ty::RegSetT>() || !(*lt == *rt))
            fail("TypeError", "register-set operands of one width required", e.pos);
        return lt;
    case Subseteq:
        if (!lt->is<ty::RegSetT>() || !(*lt == *rt))
            fail("TypeError", "register-set operands of one width required", e.pos);
        return tBool();
    case InSet:
        if (!lt->is<ty::LocT>() || !rt->is<ty::RegSetT>() ||
            lt->as<ty::LocT>().width != rt->as<ty::RegSetT>().width)
            fail("TypeError", "membership needs a register and a set of its width",
                 e.pos);
        return tBool();
    }
    fail("TypeError", "bad operator", e.pos);
}

TypePtr tc(const Expr& e, Tc& c) {
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> TypePtr {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Lit>) {
                const Value& v = x.v;
                if (v.is<Unit>()) return tUnit();
                if (v.is<Int>()) return tInt();
                if (v.is<bool>()) return tBool();
                if (v.is<std::string>()) return tString();
                if (v.is<BitVec>()) return tBV(v.as<BitVec>().width());
                fail("TypeError", "value has no literal type", e.pos);
            } else if constexpr (std::is_same_v<T, Id>) {
                const TypePtr* t = c.lookup(x.name);
                if (!t) fail("UnboundVariable", "unbound name '" + x.name + "'", e.pos);
                return *t;
            } else if constexpr (std::is_same_v<T, Deref>) {
                if (!c.stateOk)
                    fail("StateRefInMachineDecl",
                         "machine declarations may not read registers", e.pos);
                TypePtr t = tc(*x.e, c);
                if (!t->is<ty::LocT>())
                    fail("TypeError", "dereference needs a register", e.pos);
                return tBV(t->as<ty::LocT>().width);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                if (!c.stateOk)
                    fail("StateRefInMachineDecl",
                         "machine declarations may not read memory", e.pos);
                long long w = litWidth(x.width, e.pos);
                requireBV(*x.addr, c, "fetch address");
                return tBV((int)w);
            } else if constexpr (std::is_same_v<T, Index>) {
                TypePtr t = requireBV(*x.e, c, "bit-indexed value");
                long long w = t->as<ty::BVT>().width;
                if (x.idx < 0 || x.idx >= w)
                    fail("BitIndexOutOfRange",
                         "bit index " + std::to_string(x.idx) + " out of range for " +
                             std::to_string(w) + " bits", e.pos);
                return tBV(1);
            } else if constexpr (std::is_same_v<T, Slice>) {
                TypePtr t = requireBV(*x.e, c, "sliced value");
                long long w = t->as<ty::BVT>().width;
                if (!(0 <= x.lo && x.lo < x.hi && x.hi <= w))
                    fail("SliceOutOfRange",
                         "slice [" + std::to_string(x.lo) + ":" + std::to_string(x.hi) +
                             ") out of range for " + std::to_string(w) + " bits",
                         e.pos);
                return tBV((int)(x.hi - x.lo));
            } else if constexpr (std::is_same_v<T, Unop>) {
                TypePtr t = tc(*x.e, c);
                switch (x.op) {
                case UnOp::Neg:
                    if (!t->is<ty::IntT>())
                        fail("TypeError", "negation needs an int", e.pos);
                    return tInt();
                case UnOp::LNot:
                    if (!t->is<ty::BoolT>())
                        fail("TypeError", "'!' needs a bool", e.pos);
                    return tBool();
                case UnOp::BNot: {
                    TypePtr b = subsume(t);
                    if (!b->is<ty::BVT>())
                        fail("TypeError", "'~' needs a bitvector", e.pos);
                    return b;
                }
                }
                fail("TypeError", "bad operator", e.pos);
            } else if constexpr (std::is_same_v<T, Binop>) {
                return tcBinop(x, e, c);
            } else if constexpr (std::is_same_v<T, App>) {
                if (isBuiltin(x.fn)) return tcBuiltin(x, e, c);
                const TypePtr* ft = c.lookup(x.fn);
                if (!ft) fail("UnboundVariable", "unbound function '" + x.fn + "'", e.pos);
                if (!(*ft)->is<ty::FuncT>())
                    fail("TypeError", "'" + x.fn + "' is not a function", e.pos);
                const auto& f = (*ft)->as<ty::FuncT>();
                if (f.params.size() != x.args.size())
                    fail("TypeError", "wrong argument count for '" + x.fn + "'", e.pos);
                for (size_t i = 0; i < x.args.size(); ++i) {
                    TypePtr at = tc(*x.args[i], c);
                    if (!compat(f.params[i], at))
                        fail("TypeError", "argument " + std::to_string(i + 1) +
                                              " of '" + x.fn + "' has the wrong type",
                             x.args[i]->pos);
                }
                return f.result;
            } else if constexpr (std::is_same_v<T, LetIn>) {
                TypePtr want = resolve(x.ty, c.envs, e.pos);
                checkWf(want, e.pos);
                TypePtr got = tc(*x.bind, c);
                if (!compat(want, got))
                    fail("TypeError", "initializer of '" + x.name +
                                          "' does not match its type", e.pos);
                Tc inner = c;
                inner.locals[x.name] = want;
                return tc(*x.body, inner);
            } else if constexpr (std::is_same_v<T, IfE>) {
                TypePtr ct = tc(*x.cond, c);
                if (!ct->is<ty::BoolT>())
                    fail("TypeError", "condition must be a bool", e.pos);
                TypePtr a = tc(*x.then_, c);
                TypePtr b = tc(*x.else_, c);
                if (!(*a == *b))
                    fail("TypeError", "branches of 'if' must have one type", e.pos);
                return a;
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                const TypePtr* rt = c.lookup(x.region);
                if (!rt || !(*rt)->is<ty::MemT>())
                    fail("TypeError", "'" + x.region + "' is not a memory region",
                         e.pos);
                TypePtr ot = tc(*x.off, c);
                if (!ot->is<ty::IntT>())
                    fail("TypeError", "pointer offset must be an int", e.pos);
                return tBV((*rt)->as<ty::MemT>().ptrWidth);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                int width = -1;
                for (const auto& el : x.elems) {
                    TypePtr t = tc(*el, c);
                    if (!t->is<ty::LocT>())
                        fail("TypeError", "set elements must be registers", el->pos);
                    int w = t->as<ty::LocT>().width;
                    if (width == -1) width = w;
                    else if (width != w)
                        fail("TypeError", "set elements must share one width",
                             el->pos);
                }
                if (width == -1)
                    fail("TypeError", "use empty(width) for the empty set", e.pos);
                return tRegSet(width);
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                TypePtr t = tc(*x.e, c);
                if (!t->is<ty::LocT>())
                    fail("TypeError", "'.txt' needs a register", e.pos);
                return tString();
            } else if constexpr (std::is_same_v<T, SetSize>) {
                TypePtr t = tc(*x.e, c);
                if (!t->is<ty::RegSetT>())
                    fail("TypeError", "'| |' needs a register set", e.pos);
                return tInt();
            } else {
                static_assert(std::is_same_v<T, Quant>);
                fail("QuantifierNotLowered",
                     "quantifiers must be lowered before checking", e.pos);
            }
        },
        e.rep);
}

void tcStmt(const Stmt& s, Tc& c) {
    using namespace st;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Skip> || std::is_same_v<T, Crash>) {
                // nothing
            } else if constexpr (std::is_same_v<T, Assert>) {
                TypePtr at2 = tc(*x.e, c);
                if (!at2->is<ty::BoolT>())
                    fail("TypeError", "assertion must be a bool", s.pos);
            } else if constexpr (std::is_same_v<T, RegAssign>) {
                TypePtr lt = tc(*x.loc, c);
                if (!lt->is<ty::LocT>())
                    fail("TypeError", "assignment target must be a register", s.pos);
                TypePtr vt = tc(*x.val, c);
                if (!compat(tBV(lt->as<ty::LocT>().width), vt))
                    fail("TypeError", "assigned value must match the register width",
                         s.pos);
            } else if constexpr (std::is_same_v<T, Store>) {
                long long w = litWidth(x.width, s.pos);
                requireBV(*x.addr, c, "store address");
                TypePtr vt = tc(*x.val, c);
                if (!compat(tBV((int)w), vt))
                    fail("TypeError", "stored value must match the cell width", s.pos);
            } else if constexpr (std::is_same_v<T, Seq>) {
                for (const auto& sub : x.stmts) tcStmt(*sub, c);
            } else if constexpr (std::is_same_v<T, IfS>) {
                TypePtr ct2 = tc(*x.cond, c);
                if (!ct2->is<ty::BoolT>())
                    fail("TypeError", "condition must be a bool", s.pos);
                tcStmt(*x.then_, c);
                tcStmt(*x.else_, c);
            } else if constexpr (std::is_same_v<T, For>) {
                Tc inner = c;
                inner.locals[x.var] = tInt();
                tcStmt(*x.body, inner);
            } else if constexpr (std::is_same_v<T, LetS>) {
                TypePtr want = resolve(x.ty, c.envs, s.pos);
                checkWf(want, s.pos);
                TypePtr got = tc(*x.bind, c);
                if (!compat(want, got))
                    fail("TypeError", "initializer of '" + x.name +
                                          "' does not match its type", s.pos);
                Tc inner = c;
                inner.locals[x.name] = want;
                tcStmt(*x.body, inner);
            } else {
                static_assert(std::is_same_v<T, Call>);
                const TypePtr* pt = c.lookup(x.name);
                if (!pt) fail("UnboundVariable", "unbound procedure '" + x.name + "'",
                              s.pos);
                if (!(*pt)->is<ty::ProcT>())
                    fail("TypeError", "'" + x.name + "' is not a procedure", s.pos);
                const auto& p = (*pt)->as<ty::ProcT>();
                if (p.params.size() != x.args.size())
                    fail("TypeError", "wrong argument count for '" + x.name + "'",
                         s.pos);
                for (size_t i = 0; i < x.args.size(); ++i) {
                    TypePtr at = tc(*x.args[i], c);
                    if (!compat(p.params[i], at))
                        fail("TypeError", "argument " + std::to_string(i + 1) +
                                              " of '" + x.name + "' has the wrong type",
                             x.args[i]->pos);
                }
            }
        },
        s.rep);
}

void bindOnce(TypeEnvs& envs, const std::string& name, TypePtr t, Pos pos) {
    auto [it, inserted] = envs.delta.emplace(name, std::move(t));
    if (!inserted)
        fail("DuplicateBinding", "'" + name + "' is already bound", pos);
}

// machineMode: initializers of let and def may not reference state.
void tcDecl(const Decl& d, TypeEnvs& envs, bool machineMode) {
    using namespace dc;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TypeAlias>) {
                TypePtr t = resolve(x.ty, envs, d.pos);
                checkWf(t, d.pos);
                auto [it, inserted] = envs.gamma.emplace(x.name, t);
                if (!inserted)
                    fail("DuplicateBinding", "type '" + x.name + "' is already bound",
                         d.pos);
            } else if constexpr (std::is_same_v<T, Let>) {
                TypePtr want = resolve(x.ty, envs, d.pos);
                checkWf(want, d.pos);
                Tc c{envs, !machineMode, {}};
                TypePtr got = tc(*x.e, c);
                if (!compat(want, got))
                    fail("TypeError", "initializer of '" + x.name +
                                          "' does not match its type", d.pos);
                bindOnce(envs, x.name, want, d.pos);
            } else if constexpr (std::is_same_v<T, LetState>) {
                TypePtr t = resolve(x.ty, envs, d.pos);
                checkWf(t, d.pos);
                if (t->is<ty::LocT>()) {
                    if (x.label)
                        fail("TypeError", "only memory regions take labels", d.pos);
                    bindOnce(envs, x.name, t, d.pos);
                } else if (t->is<ty::MemT>()) {
                    bindOnce(envs, x.name, t, d.pos);
                    if (x.label)
                        bindOnce(envs, *x.label, tLabel(t->as<ty::MemT>().ptrWidth),
                                 d.pos);
                } else {
                    fail("BadStateType",
                         "letstate requires a register or memory type", d.pos);
                }
            } else if constexpr (std::is_same_v<T, Def>) {
                std::vector<TypePtr> ps;
                Tc c{envs, !machineMode, {}};
                for (const auto& p : x.params) {
                    TypePtr pt = resolve(p.ty, envs, d.pos);
                    checkWf(pt, d.pos);
                    if (c.locals.count(p.name))
                        fail("DuplicateBinding", "parameter '" + p.name + "' repeats",
                             d.pos);
                    c.locals[p.name] = pt;
                    ps.push_back(pt);
                }
                TypePtr ret = resolve(x.ret, envs, d.pos);
                checkWf(ret, d.pos);
                TypePtr got = tc(*x.body, c);
                if (!compat(ret, got))
                    fail("TypeError", "body of '" + x.name +
                                          "' does not match its result type", d.pos);
                bindOnce(envs, x.name, tFunc(std::move(ps), ret), d.pos);
            } else if constexpr (std::is_same_v<T, Proc>) {
                std::vector<TypePtr> ps;
                Tc c{envs, true, {}};  // procedure bodies run against state
                for (const auto& p : x.params) {
                    TypePtr pt = resolve(p.ty, envs, d.pos);
                    checkWf(pt, d.pos);
                    if (c.locals.count(p.name))
                        fail("DuplicateBinding", "parameter '" + p.name + "' repeats",
                             d.pos);
                    c.locals[p.name] = pt;
                    ps.push_back(pt);
                }
                tcStmt(*x.body, c);
                bindOnce(envs, x.name, tProc(std::move(ps)), d.pos);
            } else {
                static_assert(std::is_same_v<T, Op>);
                const Defop& op = x.op;
                if (envs.ops.count(op.name))
                    fail("DuplicateBinding", "operation '" + op.name +
                                                 "' is already defined", d.pos);
                std::vector<TypePtr> ps;
                Tc c{envs, true, {}};
                for (const auto& p : op.params) {
                    TypePtr pt = resolve(p.ty, envs, op.pos);
                    checkWf(pt, op.pos);
                    using namespace ty;
                    if (pt->is<StringT>() || pt->is<UnitT>() || pt->is<RegSetT>())
                        fail("BadOperandType",
                             "operand '" + p.name + "' of '" + op.name +
                                 "' may not be a string, unit, or register set",
                             op.pos);
                    if (c.locals.count(p.name))
                        fail("DuplicateBinding", "operand '" + p.name + "' repeats",
                             op.pos);
                    c.locals[p.name] = pt;
                    ps.push_back(pt);
                }
                TypePtr txtT = tc(*op.txt, c);
                if (!txtT->is<ty::StringT>())
                    fail("TypeError", "txt of '" + op.name + "' must be a string",
                         op.pos);
                tcStmt(*op.sem, c);
                envs.ops[op.name] = std::move(ps);
            }
        },
        d.rep);
}

} // namespace

TypePtr resolveType(const TypePtr& t, const TypeEnvs& envs, Pos pos) {
    TypePtr r = resolve(t, envs, pos);
    checkWf(r, pos);
    return r;
}

TypePtr typeExpr(const Expr& e, const TypeEnvs& envs, bool stateOk) {
    Tc c{envs, stateOk, {}};
    return tc(e, c);
}

void typeStmt(const Stmt& s, const TypeEnvs& envs) {
    Tc c{envs, true, {}};
    tcStmt(s, c);
}

TypeEnvs typeMachine(const Machine& m) {
    TypeEnvs envs;
    for (const auto& d : m.decls) tcDecl(*d, envs, /*machineMode=*/true);
    return envs;
}

void typeSpec(const Spec& s, const TypeEnvs& machineEnvs) {
    TypeEnvs envs = machineEnvs;
    for (const auto& d : s.decls) tcDecl(*d, envs, /*machineMode=*/false);
    Tc c{envs, true, {}};
    for (const auto& r : s.frame.regs) {
        TypePtr rt = tc(*r, c);
        if (!rt->is<ty::LocT>())
            fail("TypeError", "reg-modify entries must be registers", r->pos);
    }
    for (const auto& mref : s.frame.memRefs) {
        TypePtr t = subsume(tc(*mref, c));
        if (!t->is<ty::BVT>())
            fail("TypeError", "mem-modify entries must be pointers", mref->pos);
    }
    if (!tc(*s.pre, c)->is<ty::BoolT>())
        fail("TypeError", "precondition must be a bool", s.pre->pos);
    if (!tc(*s.post, c)->is<ty::BoolT>())
        fail("TypeError", "postcondition must be a bool", s.post->pos);
}

void typeProgram(const Program& p, const TypeEnvs& machineEnvs) {
    for (const auto& inst : p.insts) {
        auto it = machineEnvs.ops.find(inst.op);
        if (it == machineEnvs.ops.end())
            fail("UnknownOp", "no operation '" + inst.op + "'", inst.pos);
        const auto& params = it->second;
        if (params.size() != inst.args.size())
            fail("OperandMismatch", "operation '" + inst.op + "' takes " +
                                        std::to_string(params.size()) + " operands",
                 inst.pos);
        Tc c{machineEnvs, false, {}};
        for (size_t i = 0; i < inst.args.size(); ++i) {
            TypePtr at = tc(*inst.args[i], c);
            if (!compat(params[i], at))
                fail("OperandMismatch", "operand " + std::to_string(i + 1) + " of '" +
                                            inst.op + "' has the wrong type",
                     inst.args[i]->pos);
        }
    }
}

} // namespace casp
