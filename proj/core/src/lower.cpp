#include "casp/lower.hpp"

#include <set>

#include "casp/builtins.hpp"
#include "casp/typecheck.hpp"

namespace casp {

namespace {

using Consts = std::map<std::string, long long>;

[[noreturn]] void bail(const char* code, const std::string& msg, Pos pos) {
    throw Diag(code, msg, pos);
}

long long lowerWidth(const SymConst& w, const Consts& consts, Pos pos) {
    if (w.isLit()) return w.lit();
    auto it = consts.find(w.sym());
    if (it == consts.end())
        bail("LoweringFailed", "no constant for width '" + w.sym() + "'", pos);
    return it->second;
}

SymConst lowerSym(const SymConst& w, const Consts& consts, Pos pos) {
    return symLit(lowerWidth(w, consts, pos));
}

// ----- free-variable-aware substitution, for quantifier expansion -----

ExprPtr subst(const ExprPtr& e, const std::string& var, const ExprPtr& repl) {
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> ExprPtr {
            using T = std::decay_t<decltype(x)>;
            auto go = [&](const ExprPtr& sub) { return subst(sub, var, repl); };
            if constexpr (std::is_same_v<T, Lit>) {
                return e;
            } else if constexpr (std::is_same_v<T, Id>) {
                return x.name == var ? repl : e;
            } else if constexpr (std::is_same_v<T, Deref>) {
                return mkExpr(Deref{go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                return mkExpr(Fetch{go(x.addr), x.width}, e->pos);
            } else if constexpr (std::is_same_v<T, Index>) {
                return mkExpr(Index{go(x.e), x.idx}, e->pos);
            } else if constexpr (std::is_same_v<T, Slice>) {
                return mkExpr(Slice{go(x.e), x.lo, x.hi}, e->pos);
            } else if constexpr (std::is_same_v<T, Unop>) {
                return mkExpr(Unop{x.op, go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, Binop>) {
                return mkExpr(Binop{x.op, go(x.lhs), go(x.rhs)}, e->pos);
            } else if constexpr (std::is_same_v<T, App>) {
                std::vector<ExprPtr> args;
                for (const auto& a : x.args) args.push_back(go(a));
                return mkExpr(App{x.fn, std::move(args)}, e->pos);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                ExprPtr bind = go(x.bind);
                ExprPtr body = x.name == var ? x.body : go(x.body);
                return mkExpr(LetIn{x.name, x.ty, bind, body}, e->pos);
            } else if constexpr (std::is_same_v<T, IfE>) {
                return mkExpr(IfE{go(x.cond), go(x.then_), go(x.else_)}, e->pos);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                return mkExpr(PtrLit{x.region, go(x.off)}, e->pos);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                std::vector<ExprPtr> elems;
                for (const auto& el : x.elems) elems.push_back(go(el));
                return mkExpr(RegSetLit{std::move(elems)}, e->pos);
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                return mkExpr(TxtOf{go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, SetSize>) {
                return mkExpr(SetSize{go(x.e)}, e->pos);
            } else {
                static_assert(std::is_same_v<T, Quant>);
                ExprPtr set = go(x.set);
                ExprPtr body = x.var == var ? x.body : go(x.body);
                return mkExpr(Quant{x.isForall, x.var, set, body}, e->pos);
            }
        },
        e->rep);
}

void freeNames(const Expr& e, std::set<std::string>& bound,
               std::set<std::string>& out) {
    using namespace ex;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Id>) {
                if (!bound.count(x.name)) out.insert(x.name);
            } else if constexpr (std::is_same_v<T, Deref> || std::is_same_v<T, TxtOf> ||
                                 std::is_same_v<T, SetSize> ||
                                 std::is_same_v<T, Index> || std::is_same_v<T, Slice>) {
                freeNames(*x.e, bound, out);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                freeNames(*x.addr, bound, out);
                if (!x.width.isLit() && !bound.count(x.width.sym()))
                    out.insert(x.width.sym());
            } else if constexpr (std::is_same_v<T, Unop>) {
                freeNames(*x.e, bound, out);
            } else if constexpr (std::is_same_v<T, Binop>) {
                freeNames(*x.lhs, bound, out);
                freeNames(*x.rhs, bound, out);
            } else if constexpr (std::is_same_v<T, App>) {
                if (!isBuiltin(x.fn) && !bound.count(x.fn)) out.insert(x.fn);
                for (const auto& a : x.args) freeNames(*a, bound, out);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                freeNames(*x.bind, bound, out);
                bool fresh = bound.insert(x.name).second;
                freeNames(*x.body, bound, out);
                if (fresh) bound.erase(x.name);
            } else if constexpr (std::is_same_v<T, IfE>) {
                freeNames(*x.cond, bound, out);
                freeNames(*x.then_, bound, out);
                freeNames(*x.else_, bound, out);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                out.insert(x.region);
                freeNames(*x.off, bound, out);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                for (const auto& el : x.elems) freeNames(*el, bound, out);
            } else if constexpr (std::is_same_v<T, Quant>) {
                freeNames(*x.set, bound, out);
                bool fresh = bound.insert(x.var).second;
                freeNames(*x.body, bound, out);
                if (fresh) bound.erase(x.var);
            }
        },
        e.rep);
}

std::set<std::string> freeNames(const Expr& e) {
    std::set<std::string> bound, out;
    freeNames(e, bound, out);
    return out;
}

// ----- expression lowering -----

struct LowerCtx {
    const Consts& consts;
    const std::set<std::string>& known;  // every name the lowered spec may use
    bool allowQuantifiers;
};

ExprPtr lowerExpr(const ExprPtr& e, const LowerCtx& c,
                  std::set<std::string>& locals);

ExprPtr expandQuant(const ex::Quant& q, const Expr& e, const LowerCtx& c,
                    std::set<std::string>& locals) {
    if (!c.allowQuantifiers)
        bail("QuantifierDisabled", "quantifiers are disabled", e.pos);
    if (!q.set->is<ex::RegSetLit>())
        bail("QuantifierOverNonLiteralSet",
             "quantifier range must be a literal register set", e.pos);
    const auto& elems = q.set->as<ex::RegSetLit>().elems;
    ExprPtr acc;
    BinOp join = q.isForall ? BinOp::LAnd : BinOp::LOr;
    for (const auto& el : elems) {
        ExprPtr inst = subst(q.body, q.var, el);
        ExprPtr low = lowerExpr(inst, c, locals);
        acc = acc ? mkExpr(ex::Binop{join, acc, low}, e.pos) : low;
    }
    if (!acc)
        bail("QuantifierOverNonLiteralSet", "quantifier range is empty", e.pos);
    return acc;
}

ExprPtr lowerExpr(const ExprPtr& e, const LowerCtx& c,
                  std::set<std::string>& locals) {
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> ExprPtr {
            using T = std::decay_t<decltype(x)>;
            auto go = [&](const ExprPtr& sub) { return lowerExpr(sub, c, locals); };
            if constexpr (std::is_same_v<T, Lit>) {
                return e;
            } else if constexpr (std::is_same_v<T, Id>) {
                if (!locals.count(x.name) && !c.known.count(x.name))
                    bail("LoweringFailed", "unknown name '" + x.name + "'", e->pos);
                return e;
            } else if constexpr (std::is_same_v<T, Deref>) {
                return mkExpr(Deref{go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                return mkExpr(Fetch{go(x.addr), lowerSym(x.width, c.consts, e->pos)},
                              e->pos);
            } else if constexpr (std::is_same_v<T, Index>) {
                return mkExpr(Index{go(x.e), x.idx}, e->pos);
            } else if constexpr (std::is_same_v<T, Slice>) {
                return mkExpr(Slice{go(x.e), x.lo, x.hi}, e->pos);
            } else if constexpr (std::is_same_v<T, Unop>) {
                return mkExpr(Unop{x.op, go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, Binop>) {
                return mkExpr(Binop{x.op, go(x.lhs), go(x.rhs)}, e->pos);
            } else if constexpr (std::is_same_v<T, App>) {
                if (!isBuiltin(x.fn) && !locals.count(x.fn) && !c.known.count(x.fn))
                    bail("LoweringFailed", "unknown function '" + x.fn + "'", e->pos);
                std::vector<ExprPtr> args;
                for (const auto& a : x.args) args.push_back(go(a));
                return mkExpr(App{x.fn, std::move(args)}, e->pos);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                ExprPtr bind = go(x.bind);
                bool fresh = locals.insert(x.name).second;
                ExprPtr body = lowerExpr(x.body, c, locals);
                if (fresh) locals.erase(x.name);
                return mkExpr(LetIn{x.name, x.ty, bind, body}, e->pos);
            } else if constexpr (std::is_same_v<T, IfE>) {
                return mkExpr(IfE{go(x.cond), go(x.then_), go(x.else_)}, e->pos);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                if (!c.known.count(x.region))
                    bail("LoweringFailed", "unknown region '" + x.region + "'",
                         e->pos);
                return mkExpr(PtrLit{x.region, go(x.off)}, e->pos);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                std::vector<ExprPtr> elems;
                for (const auto& el : x.elems) elems.push_back(go(el));
                return mkExpr(RegSetLit{std::move(elems)}, e->pos);
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                return mkExpr(TxtOf{go(x.e)}, e->pos);
            } else if constexpr (std::is_same_v<T, SetSize>) {
                return mkExpr(SetSize{go(x.e)}, e->pos);
            } else {
                static_assert(std::is_same_v<T, Quant>);
                return expandQuant(x, *e, c, locals);
            }
        },
        e->rep);
}

// ----- declaration ordering -----

// References among the candidate declarations themselves; names supplied
// by the machine do not create edges. Emits in source order whenever the
// remaining dependencies allow it.
std::vector<DeclPtr> orderDecls(const std::vector<DeclPtr>& decls) {
    std::vector<std::set<std::string>> deps(decls.size());
    std::set<std::string> candidateNames;
    for (const auto& d : decls) {
        candidateNames.insert(declName(*d));
        if (d->is<dc::LetState>() && d->as<dc::LetState>().label)
            candidateNames.insert(*d->as<dc::LetState>().label);
    }

    auto typeDeps = [&](const TypePtr& t, std::set<std::string>& out) {
        if (t && t->is<ty::AliasT>()) out.insert(t->as<ty::AliasT>().name);
    };

    for (size_t i = 0; i < decls.size(); ++i) {
        std::set<std::string> refs;
        using namespace dc;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, TypeAlias>) {
                    typeDeps(x.ty, refs);
                } else if constexpr (std::is_same_v<T, Let>) {
                    typeDeps(x.ty, refs);
                    for (const auto& n : freeNames(*x.e)) refs.insert(n);
                } else if constexpr (std::is_same_v<T, LetState>) {
                    typeDeps(x.ty, refs);
                } else if constexpr (std::is_same_v<T, Def>) {
                    typeDeps(x.ret, refs);
                    std::set<std::string> bound;
                    for (const auto& p : x.params) {
                        typeDeps(p.ty, refs);
                        bound.insert(p.name);
                    }
                    std::set<std::string> fn;
                    freeNames(*x.body, bound, fn);
                    refs.insert(fn.begin(), fn.end());
                }
                // procedures and operations don't occur in lowered output
            },
            decls[i]->rep);
        for (const auto& n : refs)
            if (candidateNames.count(n) && n != declName(*decls[i]))
                deps[i].insert(n);
    }

    std::vector<DeclPtr> out;
    std::set<std::string> emitted;
    std::vector<bool> done(decls.size(), false);
    for (size_t round = 0; round < decls.size(); ++round) {
        bool progress = false;
        for (size_t i = 0; i < decls.size(); ++i) {
            if (done[i]) continue;
            bool ready = true;
            for (const auto& dep : deps[i])
                if (!emitted.count(dep)) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            done[i] = true;
            out.push_back(decls[i]);
            emitted.insert(declName(*decls[i]));
            if (decls[i]->is<dc::LetState>() && decls[i]->as<dc::LetState>().label)
                emitted.insert(*decls[i]->as<dc::LetState>().label);
            progress = true;
        }
        if (out.size() == decls.size()) break;
        if (!progress) {
            for (size_t i = 0; i < decls.size(); ++i)
                if (!done[i])
                    bail("CircularReference",
                         "declaration '" + declName(*decls[i]) +
                             "' is part of a reference cycle", decls[i]->pos);
        }
    }
    return out;
}

std::set<std::string> machineNames(const Machine& m) {
    std::set<std::string> out;
    for (const auto& d : m.decls) {
        out.insert(declName(*d));
        if (d->is<dc::LetState>() && d->as<dc::LetState>().label)
            out.insert(*d->as<dc::LetState>().label);
    }
    return out;
}

} // namespace

Consts extractConstants(const std::vector<DeclPtr>& decls) {
    Consts out;
    for (const auto& d : decls) {
        if (!d->is<dc::Let>()) continue;
        const auto& x = d->as<dc::Let>();
        if (!x.ty->is<ty::IntT>()) continue;
        if (!x.e->is<ex::Lit>() || !x.e->as<ex::Lit>().v.is<Int>()) continue;
        const Int& v = x.e->as<ex::Lit>().v.as<Int>();
        if (v > std::numeric_limits<long long>::max() ||
            v < std::numeric_limits<long long>::min())
            continue;
        out[x.name] = (long long)v;
    }
    return out;
}

TypePtr lowerType(const AleType& t, const Consts& consts, Pos pos) {
    using namespace aty;
    return std::visit(
        [&](const auto& x) -> TypePtr {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IntT>) {
                return tInt();
            } else if constexpr (std::is_same_v<T, BoolT>) {
                return tBool();
            } else if constexpr (std::is_same_v<T, AliasT>) {
                return tAlias(x.name);
            } else if constexpr (std::is_same_v<T, VecT> || std::is_same_v<T, PtrT>) {
                // plain vectors and pointers are both machine words
                return tBV((int)lowerWidth(x.width, consts, pos));
            } else if constexpr (std::is_same_v<T, LocT>) {
                return tLoc((int)lowerWidth(x.width, consts, pos));
            } else if constexpr (std::is_same_v<T, RegSetT>) {
                return tRegSet((int)lowerWidth(x.width, consts, pos));
            } else if constexpr (std::is_same_v<T, LabelT>) {
                return tLabel((int)lowerWidth(x.width, consts, pos));
            } else if constexpr (std::is_same_v<T, MemT>) {
                return tMem((int)lowerWidth(x.cellWidth, consts, pos),
                            (int)lowerWidth(x.cellCount, consts, pos),
                            (int)lowerWidth(x.ptrWidth, consts, pos));
            } else {
                static_assert(std::is_same_v<T, FuncT>);
                std::vector<TypePtr> ps;
                for (const auto& p : x.params)
                    ps.push_back(lowerType(*p, consts, pos));
                return tFunc(std::move(ps), lowerType(*x.result, consts, pos));
            }
        },
        t.rep);
}

LowerResult lowerSpec(const Machine& m, const MapFile& maps, const AleSpec& ale,
                      const LowerOptions& opt) {
    LowerResult res;
    auto trace = [&](const std::string& line) {
        if (opt.emitMapTrace) res.trace.push_back(line);
    };

    const MapModule* module = nullptr;
    for (const auto& mod : maps.modules)
        if (mod.name == ale.block) module = &mod;
    if (!module)
        bail("UnknownBlock", "no mapping module for block '" + ale.block + "'",
             Pos{});
    trace("block " + ale.block + " -> module " + module->name);

    // width constants: machine lets, mapping lets, then provided values
    Consts consts = extractConstants(m.decls);
    {
        Consts fromCommon = extractConstants(maps.common);
        consts.insert(fromCommon.begin(), fromCommon.end());
        Consts fromModule = extractConstants(module->decls);
        consts.insert(fromModule.begin(), fromModule.end());
    }

    std::set<std::string> known = machineNames(m);

    // candidate declarations of the lowered spec, in source order
    std::vector<DeclPtr> cand;
    auto addCand = [&](const DeclPtr& d) {
        cand.push_back(d);
        known.insert(declName(*d));
        if (d->is<dc::LetState>() && d->as<dc::LetState>().label)
            known.insert(*d->as<dc::LetState>().label);
    };
    for (const auto& d : maps.common) addCand(d);
    for (const auto& d : module->decls) addCand(d);

    LowerCtx ctx{consts, known, opt.allowQuantifiers};
    std::set<std::string> noLocals;

    auto lowerE = [&](const ExprPtr& e) { return lowerExpr(e, ctx, noLocals); };

    using namespace ale;
    auto lowerOne = [&](const AleDecl& d, bool blockLet) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, RequireType> ||
                              std::is_same_v<T, RequireValue> ||
                              std::is_same_v<T, RequireFunc>) {
                    // requirements produce nothing; the machine or the
                    // mapping must already satisfy them
                    if (!known.count(x.name))
                        bail("RequireUnmet",
                             "requirement '" + x.name + "' is not satisfied", d.pos);
                    trace("require " + x.name + " satisfied");
                } else if constexpr (std::is_same_v<T, ProvideType>) {
                    TypePtr t = lowerType(*x.ty, consts, d.pos);
                    addCand(mkDecl(dc::TypeAlias{x.name, t}, d.pos));
                    trace("provide type " + x.name);
                } else if constexpr (std::is_same_v<T, ProvideValue>) {
                    TypePtr t = lowerType(*x.ty, consts, d.pos);
                    ExprPtr e = lowerE(x.e);
                    addCand(mkDecl(dc::Let{x.name, t, e}, d.pos));
                    // provided integer literals become usable as widths
                    if (t->is<ty::IntT>() && e->is<ex::Lit>() &&
                        e->as<ex::Lit>().v.is<Int>())
                        consts[x.name] = (long long)e->as<ex::Lit>().v.as<Int>();
                    trace("provide value " + x.name);
                } else if constexpr (std::is_same_v<T, ProvideFunc>) {
                    std::vector<Param> ps;
                    std::set<std::string> locals;
                    for (const auto& [pn, pt] : x.params) {
                        ps.push_back(Param{pn, lowerType(*pt, consts, d.pos)});
                        locals.insert(pn);
                    }
                    TypePtr ret = lowerType(*x.ret, consts, d.pos);
                    ExprPtr body = lowerExpr(x.body, ctx, locals);
                    addCand(mkDecl(dc::Def{x.name, std::move(ps), ret, body}, d.pos));
                    trace("provide func " + x.name);
                } else if constexpr (std::is_same_v<T, Region>) {
                    TypePtr t = lowerType(*x.ty, consts, d.pos);
                    if (!t->is<ty::MemT>())
                        bail("LoweringFailed",
                             "region '" + x.name + "' needs a memory type", d.pos);
                    addCand(mkDecl(dc::LetState{x.name, t, std::nullopt, x.label},
                                   d.pos));
                    trace("region " + x.name);
                } else {
                    static_assert(std::is_same_v<T, Let>);
                    TypePtr t = lowerType(*x.ty, consts, d.pos);
                    ExprPtr e = lowerE(x.e);
                    addCand(mkDecl(dc::Let{x.name, t, e}, d.pos));
                    // block-level lets never feed width resolution
                    if (!blockLet && t->is<ty::IntT>() && e->is<ex::Lit>() &&
                        e->as<ex::Lit>().v.is<Int>())
                        consts[x.name] = (long long)e->as<ex::Lit>().v.as<Int>();
                    trace(std::string(blockLet ? "block let " : "let ") + x.name);
                }
            },
            d.rep);
    };

    for (const auto& d : ale.decls) lowerOne(*d, false);
    for (const auto& d : ale.blockLets) lowerOne(*d, true);

    res.spec.decls = orderDecls(cand);

    res.spec.frame = module->frame;
    for (const auto& r : ale.regModify) res.spec.frame.regs.push_back(lowerE(r));
    for (const auto& mp : ale.memModify)
        res.spec.frame.memRefs.push_back(lowerE(mp));

    res.spec.pre = lowerE(ale.pre);
    res.spec.post = lowerE(ale.post);

    // the lowered spec must be well-typed against the machine
    TypeEnvs envs = typeMachine(m);
    typeSpec(res.spec, envs);

    return res;
}

} // namespace casp
