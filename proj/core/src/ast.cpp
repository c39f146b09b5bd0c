#include "casp/ast.hpp"

namespace casp {

const char* unopName(UnOp op) {
    switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::LNot: return "!";
    case UnOp::BNot: return "~";
    }
    return "?";
}

const char* binopName(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::LAnd: return "&&";
    case BinOp::LOr: return "||";
    case BinOp::LXor: return "^^";
    case BinOp::BAdd: return "b+";
    case BinOp::BSub: return "b-";
    case BinOp::BMul: return "b*";
    case BinOp::BDiv: return "b/";
    case BinOp::Shl: return "<<";
    case BinOp::Shr: return ">>";
    case BinOp::Sar: return ">>s";
    case BinOp::BAnd: return "band";
    case BinOp::BOr: return "bor";
    case BinOp::BXor: return "bxor";
    case BinOp::BULt: return "b<";
    case BinOp::BULe: return "b<=";
    case BinOp::BUGt: return "b>";
    case BinOp::BUGe: return "b>=";
    case BinOp::BSLt: return "bs<";
    case BinOp::BSLe: return "bs<=";
    case BinOp::BSGt: return "bs>";
    case BinOp::BSGe: return "bs>=";
    case BinOp::Union: return "union";
    case BinOp::Intersect: return "intersect";
    case BinOp::Subseteq: return "subseteq";
    case BinOp::SetMinus: return "setminus";
    case BinOp::InSet: return "in";
    }
    return "?";
}

ExprPtr mkExpr(Expr::Rep rep, Pos pos) {
    return std::make_shared<const Expr>(Expr{std::move(rep), pos});
}

StmtPtr mkStmt(Stmt::Rep rep, Pos pos) {
    return std::make_shared<const Stmt>(Stmt{std::move(rep), pos});
}

StmtPtr mkSeq(std::vector<StmtPtr> stmts, Pos pos) {
    std::vector<StmtPtr> flat;
    for (auto& s : stmts) {
        if (s->is<st::Seq>()) {
            const auto& inner = s->as<st::Seq>().stmts;
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(std::move(s));
        }
    }
    if (flat.empty()) return mkStmt(st::Skip{}, pos);
    if (flat.size() == 1) return flat[0];
    return mkStmt(st::Seq{std::move(flat)}, pos);
}

DeclPtr mkDecl(Decl::Rep rep, Pos pos) {
    return std::make_shared<const Decl>(Decl{std::move(rep), pos});
}

AleDeclPtr mkAleDecl(AleDecl::Rep rep, Pos pos) {
    return std::make_shared<const AleDecl>(AleDecl{std::move(rep), pos});
}

namespace {

template <class T>
bool eq(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
    if (!a || !b) return !a && !b;
    return *a == *b;
}

template <class P>
bool vecEq(const std::vector<P>& a, const std::vector<P>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

} // namespace

bool operator==(const Expr& a, const Expr& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, Lit>) {
                return x.v == y.v;
            } else if constexpr (std::is_same_v<T, Id>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, Deref>) {
                return eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                return x.width == y.width && eq(x.addr, y.addr);
            } else if constexpr (std::is_same_v<T, Index>) {
                return x.idx == y.idx && eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, Slice>) {
                return x.lo == y.lo && x.hi == y.hi && eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, Unop>) {
                return x.op == y.op && eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, Binop>) {
                return x.op == y.op && eq(x.lhs, y.lhs) && eq(x.rhs, y.rhs);
            } else if constexpr (std::is_same_v<T, App>) {
                return x.fn == y.fn && vecEq(x.args, y.args);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                return x.name == y.name && eq(x.ty, y.ty) && eq(x.bind, y.bind) &&
                       eq(x.body, y.body);
            } else if constexpr (std::is_same_v<T, IfE>) {
                return eq(x.cond, y.cond) && eq(x.then_, y.then_) && eq(x.else_, y.else_);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                return x.region == y.region && eq(x.off, y.off);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                return vecEq(x.elems, y.elems);
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                return eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, SetSize>) {
                return eq(x.e, y.e);
            } else {
                static_assert(std::is_same_v<T, Quant>);
                return x.isForall == y.isForall && x.var == y.var &&
                       eq(x.set, y.set) && eq(x.body, y.body);
            }
        },
        a.rep);
}

bool operator==(const Stmt& a, const Stmt& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace st;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, Skip> || std::is_same_v<T, Crash>) {
                return true;
            } else if constexpr (std::is_same_v<T, Assert>) {
                return eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, RegAssign>) {
                return eq(x.loc, y.loc) && eq(x.val, y.val);
            } else if constexpr (std::is_same_v<T, Store>) {
                return x.width == y.width && eq(x.addr, y.addr) && eq(x.val, y.val);
            } else if constexpr (std::is_same_v<T, Seq>) {
                return vecEq(x.stmts, y.stmts);
            } else if constexpr (std::is_same_v<T, IfS>) {
                return eq(x.cond, y.cond) && eq(x.then_, y.then_) && eq(x.else_, y.else_);
            } else if constexpr (std::is_same_v<T, For>) {
                return x.var == y.var && x.lo == y.lo && x.hi == y.hi && eq(x.body, y.body);
            } else if constexpr (std::is_same_v<T, LetS>) {
                return x.name == y.name && eq(x.ty, y.ty) && eq(x.bind, y.bind) &&
                       eq(x.body, y.body);
            } else {
                static_assert(std::is_same_v<T, Call>);
                return x.name == y.name && vecEq(x.args, y.args);
            }
        },
        a.rep);
}

bool operator==(const Param& a, const Param& b) {
    return a.name == b.name && eq(a.ty, b.ty);
}

bool operator==(const Defop& a, const Defop& b) {
    return a.name == b.name && a.params == b.params && eq(a.txt, b.txt) &&
           eq(a.sem, b.sem);
}

bool operator==(const Decl& a, const Decl& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace dc;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, TypeAlias>) {
                return x.name == y.name && eq(x.ty, y.ty);
            } else if constexpr (std::is_same_v<T, Let>) {
                return x.name == y.name && eq(x.ty, y.ty) && eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, LetState>) {
                return x.name == y.name && eq(x.ty, y.ty) && x.text == y.text &&
                       x.label == y.label;
            } else if constexpr (std::is_same_v<T, Def>) {
                return x.name == y.name && x.params == y.params && eq(x.ret, y.ret) &&
                       eq(x.body, y.body);
            } else if constexpr (std::is_same_v<T, Proc>) {
                return x.name == y.name && x.params == y.params && eq(x.body, y.body);
            } else {
                static_assert(std::is_same_v<T, Op>);
                return x.op == y.op;
            }
        },
        a.rep);
}

const std::string& declName(const Decl& d) {
    using namespace dc;
    return std::visit(
        [](const auto& x) -> const std::string& {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Op>)
                return x.op.name;
            else
                return x.name;
        },
        d.rep);
}

bool operator==(const Machine& a, const Machine& b) { return vecEq(a.decls, b.decls); }

bool operator==(const Frame& a, const Frame& b) {
    return vecEq(a.regs, b.regs) && vecEq(a.memRefs, b.memRefs);
}

bool operator==(const Spec& a, const Spec& b) {
    return vecEq(a.decls, b.decls) && a.frame == b.frame && eq(a.pre, b.pre) &&
           eq(a.post, b.post);
}

bool operator==(const Inst& a, const Inst& b) {
    return a.op == b.op && vecEq(a.args, b.args);
}

bool operator==(const Program& a, const Program& b) { return a.insts == b.insts; }

bool operator==(const AleDecl& a, const AleDecl& b) {
    if (a.rep.index() != b.rep.index()) return false;
    using namespace ale;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = b.as<T>();
            if constexpr (std::is_same_v<T, RequireType>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, RequireValue> ||
                                 std::is_same_v<T, RequireFunc> ||
                                 std::is_same_v<T, ProvideType>) {
                return x.name == y.name && eq(x.ty, y.ty);
            } else if constexpr (std::is_same_v<T, ProvideValue>) {
                return x.name == y.name && eq(x.ty, y.ty) && eq(x.e, y.e);
            } else if constexpr (std::is_same_v<T, ProvideFunc>) {
                if (x.name != y.name || !eq(x.ret, y.ret) || !eq(x.body, y.body))
                    return false;
                if (x.params.size() != y.params.size()) return false;
                for (size_t i = 0; i < x.params.size(); ++i)
                    if (x.params[i].first != y.params[i].first ||
                        !eq(x.params[i].second, y.params[i].second))
                        return false;
                return true;
            } else if constexpr (std::is_same_v<T, Region>) {
                return x.name == y.name && eq(x.ty, y.ty) && x.label == y.label;
            } else {
                static_assert(std::is_same_v<T, Let>);
                return x.name == y.name && eq(x.ty, y.ty) && eq(x.e, y.e);
            }
        },
        a.rep);
}

const std::string& aleDeclName(const AleDecl& d) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, d.rep);
}

bool operator==(const AleSpec& a, const AleSpec& b) {
    return vecEq(a.decls, b.decls) && a.block == b.block &&
           vecEq(a.blockLets, b.blockLets) && vecEq(a.regModify, b.regModify) &&
           vecEq(a.memModify, b.memModify) && eq(a.pre, b.pre) && eq(a.post, b.post);
}

bool operator==(const MapModule& a, const MapModule& b) {
    return a.name == b.name && vecEq(a.decls, b.decls) && a.frame == b.frame;
}

bool operator==(const MapFile& a, const MapFile& b) {
    return vecEq(a.common, b.common) && a.modules == b.modules;
}

} // namespace casp
