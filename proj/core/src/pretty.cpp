#include "casp/pretty.hpp"

#include <cassert>
#include <sstream>

namespace casp {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        default: out += c;
        }
    }
    out += "\"";
    return out;
}

// Precedence levels, mirroring the parser's table.
constexpr int kLowest = 0;
// binders: a bound expression at or below `in`'s precedence would let the
// reparse swallow the binder's own `in`, so print it parenthesized
constexpr int kBind = 9;
constexpr int kUnary = 13;
constexpr int kPostfix = 14;
constexpr int kPrimary = 15;

int binPrec(BinOp op) {
    switch (op) {
    case BinOp::LOr: return 1;
    case BinOp::LXor: return 2;
    case BinOp::LAnd: return 3;
    case BinOp::BOr: return 4;
    case BinOp::BXor: return 5;
    case BinOp::BAnd: return 6;
    case BinOp::Eq:
    case BinOp::Ne: return 7;
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::BULt:
    case BinOp::BULe:
    case BinOp::BUGt:
    case BinOp::BUGe:
    case BinOp::BSLt:
    case BinOp::BSLe:
    case BinOp::BSGt:
    case BinOp::BSGe:
    case BinOp::InSet:
    case BinOp::Subseteq: return 8;
    case BinOp::Union:
    case BinOp::Intersect:
    case BinOp::SetMinus: return 9;
    case BinOp::Shl:
    case BinOp::Shr:
    case BinOp::Sar: return 10;
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::BAdd:
    case BinOp::BSub: return 11;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::BMul:
    case BinOp::BDiv: return 12;
    }
    return kLowest;
}

int exprLevel(const Expr& e) {
    using namespace ex;
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, LetIn> || std::is_same_v<T, IfE> ||
                          std::is_same_v<T, Quant>)
                return kLowest;
            else if constexpr (std::is_same_v<T, Binop>)
                return binPrec(x.op);
            else if constexpr (std::is_same_v<T, Unop> || std::is_same_v<T, Deref>)
                return kUnary;
            else if constexpr (std::is_same_v<T, TxtOf> || std::is_same_v<T, Index> ||
                               std::is_same_v<T, Slice> || std::is_same_v<T, App>)
                return kPostfix;
            else
                return kPrimary;
        },
        e.rep);
}

std::string pp(const Expr& e, int minPrec);

std::string ppList(const std::vector<ExprPtr>& es) {
    std::string out;
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) out += ", ";
        out += pp(*es[i], kLowest);
    }
    return out;
}

std::string litText(const Value& v) {
    if (v.is<Unit>()) return "()";
    if (v.is<Int>()) {
        std::ostringstream ss;
        ss << v.as<Int>();
        return ss.str();
    }
    if (v.is<bool>()) return v.as<bool>() ? "true" : "false";
    if (v.is<std::string>()) return quoted(v.as<std::string>());
    if (v.is<BitVec>()) return v.as<BitVec>().toBinaryString();
    // other value forms have no literal syntax and never appear in parsed trees
    return v.show();
}

std::string bare(const Expr& e) {
    using namespace ex;
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Lit>) {
                return litText(x.v);
            } else if constexpr (std::is_same_v<T, Id>) {
                return x.name;
            } else if constexpr (std::is_same_v<T, Deref>) {
                return "*" + pp(*x.e, kUnary);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                return "[" + pp(*x.addr, kLowest) + "]:" + pretty(x.width);
            } else if constexpr (std::is_same_v<T, Index>) {
                return pp(*x.e, kPostfix) + "[" + std::to_string(x.idx) + "]";
            } else if constexpr (std::is_same_v<T, Slice>) {
                return pp(*x.e, kPostfix) + "[" + std::to_string(x.lo) + ":" +
                       std::to_string(x.hi) + "]";
            } else if constexpr (std::is_same_v<T, Unop>) {
                return std::string(unopName(x.op)) + pp(*x.e, kUnary);
            } else if constexpr (std::is_same_v<T, Binop>) {
                int p = binPrec(x.op);
                return pp(*x.lhs, p) + " " + binopName(x.op) + " " + pp(*x.rhs, p + 1);
            } else if constexpr (std::is_same_v<T, App>) {
                return x.fn + "(" + ppList(x.args) + ")";
            } else if constexpr (std::is_same_v<T, LetIn>) {
                return "let " + x.name + " : " + pretty(*x.ty) + " = " +
                       pp(*x.bind, kBind) + " in " + pp(*x.body, kLowest);
            } else if constexpr (std::is_same_v<T, IfE>) {
                return "if " + pp(*x.cond, kLowest) + " then " +
                       pp(*x.then_, kLowest) + " else " + pp(*x.else_, kLowest);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                return "[" + x.region + ", " + pp(*x.off, kLowest) + "]";
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                return "{" + ppList(x.elems) + "}";
            } else if constexpr (std::is_same_v<T, TxtOf>) {
                return pp(*x.e, kPostfix) + ".txt";
            } else if constexpr (std::is_same_v<T, SetSize>) {
                std::string s = pp(*x.e, kLowest);
                // keep adjacent bars from lexing as a logical-or token
                if (!s.empty() && s.front() == '|') s = " " + s;
                if (!s.empty() && s.back() == '|') s += " ";
                return "|" + s + "|";
            } else {
                static_assert(std::is_same_v<T, Quant>);
                return std::string(x.isForall ? "forall " : "exists ") + x.var +
                       " in " + pp(*x.set, 1) + " . " + pp(*x.body, kLowest);
            }
        },
        e.rep);
}

std::string pp(const Expr& e, int minPrec) {
    std::string s = bare(e);
    if (exprLevel(e) < minPrec) return "(" + s + ")";
    return s;
}

std::string ind(int n) { return std::string(2 * n, ' '); }

std::string ppStmt(const Stmt& s, int indent, bool inSeq);

std::string ppSeq(const Stmt& s, int indent) {
    if (!s.is<st::Seq>()) return ppStmt(s, indent, false);
    const auto& ss = s.as<st::Seq>().stmts;
    std::string out;
    for (size_t i = 0; i < ss.size(); ++i) {
        if (i) out += ";\n";
        out += ppStmt(*ss[i], indent, true);
    }
    return out;
}

std::string ppStmt(const Stmt& s, int indent, bool inSeq) {
    using namespace st;
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            std::string pre = ind(indent);
            if constexpr (std::is_same_v<T, Skip>) {
                return pre + "skip";
            } else if constexpr (std::is_same_v<T, Crash>) {
                return pre + "crash";
            } else if constexpr (std::is_same_v<T, Assert>) {
                return pre + "assert(" + pp(*x.e, kLowest) + ")";
            } else if constexpr (std::is_same_v<T, RegAssign>) {
                return pre + "*" + pp(*x.loc, kUnary) + " <- " + pp(*x.val, kLowest);
            } else if constexpr (std::is_same_v<T, Store>) {
                return pre + "[" + pp(*x.addr, kLowest) + "]:" + pretty(x.width) +
                       " <- " + pp(*x.val, kLowest);
            } else if constexpr (std::is_same_v<T, Seq>) {
                // a sequence in single-statement position needs delimiters
                return pre + "(\n" + ppSeq(s, indent + 1) + "\n" + pre + ")";
            } else if constexpr (std::is_same_v<T, IfS>) {
                std::string out = pre + "if " + pp(*x.cond, kLowest) + " then {\n";
                out += ppSeq(*x.then_, indent + 1) + "\n" + pre + "} else {\n";
                out += ppSeq(*x.else_, indent + 1) + "\n" + pre + "}";
                return out;
            } else if constexpr (std::is_same_v<T, For>) {
                std::string out = pre + "for " + x.var + " in " +
                                  std::to_string(x.lo) + " .. " +
                                  std::to_string(x.hi) + " do\n";
                out += ppSeq(*x.body, indent + 1) + "\n" + pre + "done";
                return out;
            } else if constexpr (std::is_same_v<T, LetS>) {
                // a scoped let consumes the rest of a sequence, so inside
                // one it must be parenthesized to keep its extent
                std::string open = inSeq ? "(" : "";
                std::string out = pre + open + "let " + x.name + " : " +
                                  pretty(*x.ty) + " = " + pp(*x.bind, kBind) +
                                  " in\n";
                out += ppSeq(*x.body, indent + 1);
                if (inSeq) out += "\n" + pre + ")";
                return out;
            } else {
                static_assert(std::is_same_v<T, Call>);
                return pre + x.name + "(" + ppList(x.args) + ")";
            }
        },
        s.rep);
}

} // namespace

std::string pretty(const SymConst& c) {
    if (c.isLit()) return std::to_string(c.lit());
    return c.sym();
}

std::string pretty(const Type& t) {
    using namespace ty;
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitT>) return "unit";
            else if constexpr (std::is_same_v<T, IntT>) return "int";
            else if constexpr (std::is_same_v<T, BoolT>) return "bool";
            else if constexpr (std::is_same_v<T, StringT>) return "string";
            else if constexpr (std::is_same_v<T, AliasT>) return x.name;
            else if constexpr (std::is_same_v<T, BVT>)
                return std::to_string(x.width) + " bit";
            else if constexpr (std::is_same_v<T, LocT>)
                return std::to_string(x.width) + " bit loc";
            else if constexpr (std::is_same_v<T, RegSetT>)
                return std::to_string(x.width) + " reg set";
            else if constexpr (std::is_same_v<T, LabelT>)
                return std::to_string(x.width) + " label";
            else if constexpr (std::is_same_v<T, MemT>)
                return std::to_string(x.cellWidth) + " bit " +
                       std::to_string(x.cellCount) + " len " +
                       std::to_string(x.ptrWidth) + " ref";
            else if constexpr (std::is_same_v<T, FuncT>) {
                std::string out = "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += pretty(*x.params[i]);
                }
                return out + ") -> " + pretty(*x.result);
            } else {
                static_assert(std::is_same_v<T, ProcT>);
                std::string out = "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += pretty(*x.params[i]);
                }
                return out + ") proc";
            }
        },
        t.rep);
}

std::string pretty(const AleType& t) {
    using namespace aty;
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IntT>) return "int";
            else if constexpr (std::is_same_v<T, BoolT>) return "bool";
            else if constexpr (std::is_same_v<T, AliasT>) return x.name;
            else if constexpr (std::is_same_v<T, VecT>)
                return pretty(x.width) + " vec";
            else if constexpr (std::is_same_v<T, PtrT>)
                return pretty(x.width) + " ptr";
            else if constexpr (std::is_same_v<T, LocT>)
                return pretty(x.width) + " loc";
            else if constexpr (std::is_same_v<T, RegSetT>)
                return pretty(x.width) + " reg set";
            else if constexpr (std::is_same_v<T, LabelT>)
                return pretty(x.width) + " label";
            else if constexpr (std::is_same_v<T, MemT>)
                return pretty(x.cellWidth) + " vec " + pretty(x.cellCount) +
                       " len " + pretty(x.ptrWidth) + " ref";
            else {
                static_assert(std::is_same_v<T, FuncT>);
                std::string out = "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += pretty(*x.params[i]);
                }
                return out + ") -> " + pretty(*x.result);
            }
        },
        t.rep);
}

std::string pretty(const Expr& e) { return pp(e, kLowest); }

std::string pretty(const Stmt& s, int indent) { return ppSeq(s, indent); }

std::string pretty(const Defop& op) {
    std::string out = "defop " + op.name;
    if (!op.params.empty()) {
        out += " [";
        for (size_t i = 0; i < op.params.size(); ++i) {
            if (i) out += ", ";
            out += op.params[i].name + ": " + pretty(*op.params[i].ty);
        }
        out += "]";
    }
    out += " {\n  txt = " + pretty(*op.txt) + ",\n  sem =\n";
    out += pretty(*op.sem, 2);
    out += "\n}";
    return out;
}

std::string pretty(const Decl& d) {
    using namespace dc;
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TypeAlias>) {
                return "type " + x.name + " = " + pretty(*x.ty) + ";;";
            } else if constexpr (std::is_same_v<T, Let>) {
                return "let " + x.name + " : " + pretty(*x.ty) + " = " +
                       pretty(*x.e) + ";;";
            } else if constexpr (std::is_same_v<T, LetState>) {
                std::string out = "letstate " + x.name + " : " + pretty(*x.ty);
                if (x.text) out += " txt " + quoted(*x.text);
                if (x.label) out += " with " + *x.label;
                return out + ";;";
            } else if constexpr (std::is_same_v<T, Def>) {
                std::string out = "def " + x.name + "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += x.params[i].name + ": " + pretty(*x.params[i].ty);
                }
                return out + ") : " + pretty(*x.ret) + " = " + pretty(*x.body) + ";;";
            } else if constexpr (std::is_same_v<T, Proc>) {
                std::string out = "proc " + x.name + "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += x.params[i].name + ": " + pretty(*x.params[i].ty);
                }
                return out + ") {\n" + pretty(*x.body, 1) + "\n};;";
            } else {
                static_assert(std::is_same_v<T, Op>);
                return pretty(x.op) + ";;";
            }
        },
        d.rep);
}

std::string pretty(const Machine& m) {
    std::string out;
    for (const auto& d : m.decls) out += pretty(*d) + "\n";
    return out;
}

std::string pretty(const Frame& f) {
    std::string out;
    if (!f.regs.empty()) out += "reg-modify: " + ppList(f.regs) + ";;\n";
    if (!f.memRefs.empty()) out += "mem-modify: " + ppList(f.memRefs) + ";;\n";
    return out;
}

std::string pretty(const Spec& s) {
    std::string out;
    for (const auto& d : s.decls) out += pretty(*d) + "\n";
    out += pretty(s.frame);
    out += "pre: " + pretty(*s.pre) + ";;\n";
    out += "post: " + pretty(*s.post) + ";;\n";
    return out;
}

std::string pretty(const Inst& i) {
    std::string out = i.op;
    for (const auto& a : i.args) out += " " + pp(*a, kPrimary);
    return out;
}

std::string pretty(const Program& p) {
    std::string out;
    for (const auto& i : p.insts) out += pretty(i) + "\n";
    return out;
}

std::string pretty(const AleDecl& d) {
    using namespace ale;
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, RequireType>) {
                return "require type " + x.name + ";;";
            } else if constexpr (std::is_same_v<T, RequireValue>) {
                return "require value " + x.name + " : " + pretty(*x.ty) + ";;";
            } else if constexpr (std::is_same_v<T, RequireFunc>) {
                return "require func " + x.name + " : " + pretty(*x.ty) + ";;";
            } else if constexpr (std::is_same_v<T, ProvideType>) {
                return "provide type " + x.name + " = " + pretty(*x.ty) + ";;";
            } else if constexpr (std::is_same_v<T, ProvideValue>) {
                return "provide value " + x.name + " : " + pretty(*x.ty) + " = " +
                       pretty(*x.e) + ";;";
            } else if constexpr (std::is_same_v<T, ProvideFunc>) {
                std::string out = "provide func " + x.name + "(";
                for (size_t i = 0; i < x.params.size(); ++i) {
                    if (i) out += ", ";
                    out += x.params[i].first + ": " + pretty(*x.params[i].second);
                }
                return out + ") : " + pretty(*x.ret) + " = " + pretty(*x.body) + ";;";
            } else if constexpr (std::is_same_v<T, Region>) {
                std::string out = "region " + x.name + " : " + pretty(*x.ty);
                if (x.label) out += " with " + *x.label;
                return out + ";;";
            } else {
                static_assert(std::is_same_v<T, Let>);
                return "let " + x.name + " : " + pretty(*x.ty) + " = " +
                       pretty(*x.e) + ";;";
            }
        },
        d.rep);
}

std::string pretty(const AleSpec& s) {
    std::string out;
    for (const auto& d : s.decls) out += pretty(*d) + "\n";
    out += "block " + s.block + " {\n";
    for (const auto& d : s.blockLets) out += "  " + pretty(*d) + "\n";
    if (!s.regModify.empty()) out += "  reg-modify: " + ppList(s.regModify) + ";;\n";
    if (!s.memModify.empty()) out += "  mem-modify: " + ppList(s.memModify) + ";;\n";
    out += "  pre: " + pretty(*s.pre) + ";;\n";
    out += "  post: " + pretty(*s.post) + ";;\n";
    out += "}\n";
    return out;
}

std::string pretty(const MapModule& m) {
    std::string out = "module " + m.name + " {\n";
    for (const auto& d : m.decls) out += "  " + pretty(*d) + "\n";
    std::string fr = pretty(m.frame);
    if (!fr.empty()) out += "  " + fr;
    out += "}\n";
    return out;
}

std::string pretty(const MapFile& m) {
    std::string out;
    for (const auto& d : m.common) out += pretty(*d) + "\n";
    for (const auto& mod : m.modules) out += pretty(mod) + "\n";
    return out;
}

} // namespace casp
