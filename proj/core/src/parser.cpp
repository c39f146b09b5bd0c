#include "casp/parser.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "casp/lexer.hpp"

namespace casp {

namespace fs = std::filesystem;

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Diag("IOError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct IncludeCtx {
    fs::path baseDir;
    std::set<std::string>* seen = nullptr;  // canonical paths already inlined
    std::set<std::string>* stack = nullptr; // canonical paths being processed
};

std::vector<DeclPtr> parseMachineDecls(const std::string& src, const IncludeCtx* inc);

class Parser {
public:
    Parser(const std::string& src, const IncludeCtx* inc = nullptr)
        : toks_(lex(src)), inc_(inc) {}

    // ----- token plumbing -----

    const Token& peek(int k = 0) const {
        size_t j = i_ + k;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    bool at(Token::Kind k) const { return peek().is(k); }
    bool at(Token::Kind k, const char* t) const { return peek().is(k, t); }
    bool atSym(const char* t) const { return at(Token::Sym, t); }
    bool atKw(const char* t) const { return at(Token::Ident, t); }

    const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    bool eatSym(const char* t) {
        if (!atSym(t)) return false;
        take();
        return true;
    }
    bool eatKw(const char* t) {
        if (!atKw(t)) return false;
        take();
        return true;
    }

    void expectSym(const char* t) {
        if (!eatSym(t)) err(std::string("expected '") + t + "'");
    }
    void expectKw(const char* t) {
        if (!eatKw(t)) err(std::string("expected '") + t + "'");
    }
    std::string expectIdent(const char* what = "identifier") {
        if (!at(Token::Ident)) err(std::string("expected ") + what);
        return take().text;
    }
    long long expectIntLit() {
        if (!at(Token::IntLit)) err("expected integer literal");
        return (long long)take().ival;
    }

    [[noreturn]] void err(const std::string& msg) const {
        throw Diag("ParseError", msg, peek().pos);
    }

    void expectEof() {
        if (!at(Token::Eof)) err("unexpected trailing input");
    }

    // ----- types (machine language): widths must be literal -----

    TypePtr parseType() {
        Pos pos = peek().pos;
        if (eatKw("int")) return tInt();
        if (eatKw("bool")) return tBool();
        if (eatKw("string")) return tString();
        if (eatKw("unit")) return tUnit();
        if (at(Token::IntLit)) {
            int w = (int)expectIntLit();
            if (eatKw("label")) return tLabel(w);
            if (eatKw("loc")) return tLoc(w);
            if (eatKw("reg")) {
                expectKw("set");
                return tRegSet(w);
            }
            expectKw("bit");
            if (eatKw("loc")) return tLoc(w);
            if (at(Token::IntLit)) {
                int len = (int)expectIntLit();
                expectKw("len");
                int pw = (int)expectIntLit();
                expectKw("ref");
                return tMem(w, len, pw);
            }
            return tBV(w);
        }
        if (at(Token::Ident)) return tAlias(take().text);
        (void)pos;
        err("expected type");
    }

    // ----- types (spec language): widths may be symbolic -----

    SymConst parseWidth() {
        if (at(Token::IntLit)) return symLit(expectIntLit());
        if (at(Token::Ident)) return symVar(take().text);
        err("expected width");
    }

    AleTypePtr parseAleType() {
        using namespace aty;
        if (eatKw("int")) return mkAleType(IntT{});
        if (eatKw("bool")) return mkAleType(BoolT{});
        if (eatKw("word")) return mkAleType(VecT{symVar("wordsize")});
        if (atSym("(")) return parseAleFuncType();
        // bare shape keywords default their width to wordsize
        if (atKw("vec") || atKw("ptr") || atKw("loc") || atKw("label") ||
            (atKw("reg") && peek(1).is(Token::Ident, "set")))
            return parseAleShape(symVar("wordsize"));
        if (at(Token::IntLit) ||
            (at(Token::Ident) && isShapeKw(peek(1)))) {
            SymConst w = parseWidth();
            return parseAleShape(w);
        }
        if (at(Token::Ident)) return mkAleType(AliasT{take().text});
        err("expected type");
    }

    static bool isShapeKw(const Token& t) {
        return t.is(Token::Ident, "vec") || t.is(Token::Ident, "ptr") ||
               t.is(Token::Ident, "loc") || t.is(Token::Ident, "label") ||
               t.is(Token::Ident, "reg");
    }

    AleTypePtr parseAleShape(SymConst w) {
        using namespace aty;
        if (eatKw("label")) return mkAleType(LabelT{w});
        if (eatKw("loc")) return mkAleType(LocT{w});
        if (eatKw("ptr")) return mkAleType(PtrT{w});
        if (eatKw("reg")) {
            expectKw("set");
            return mkAleType(RegSetT{w});
        }
        expectKw("vec");
        if (eatKw("loc")) return mkAleType(LocT{w});
        if (at(Token::IntLit) || (at(Token::Ident) && peek(1).is(Token::Ident, "len"))) {
            SymConst len = parseWidth();
            expectKw("len");
            SymConst pw = parseWidth();
            expectKw("ref");
            return mkAleType(MemT{w, len, pw});
        }
        return mkAleType(VecT{w});
    }

    AleTypePtr parseAleFuncType() {
        expectSym("(");
        std::vector<AleTypePtr> params;
        if (!atSym(")")) {
            for (;;) {
                params.push_back(parseAleType());
                if (!eatSym(",")) break;
            }
        }
        expectSym(")");
        expectSym("->");
        AleTypePtr ret = parseAleType();
        return mkAleType(aty::FuncT{std::move(params), std::move(ret)});
    }

    // ----- expressions -----

    struct OpInfo {
        BinOp op;
        int prec;
    };

    bool binOpInfo(OpInfo& out) const {
        const Token& t = peek();
        auto mk = [&](BinOp op, int prec) {
            out = {op, prec};
            return true;
        };
        if (t.is(Token::Sym)) {
            const std::string& s = t.text;
            if (s == "||") return mk(BinOp::LOr, 1);
            if (s == "^^") return mk(BinOp::LXor, 2);
            if (s == "&&") return mk(BinOp::LAnd, 3);
            if (s == "==") return mk(BinOp::Eq, 7);
            if (s == "!=") return mk(BinOp::Ne, 7);
            if (s == "<") return mk(BinOp::Lt, 8);
            if (s == "<=") return mk(BinOp::Le, 8);
            if (s == ">") return mk(BinOp::Gt, 8);
            if (s == ">=") return mk(BinOp::Ge, 8);
            if (s == "b<") return mk(BinOp::BULt, 8);
            if (s == "b<=") return mk(BinOp::BULe, 8);
            if (s == "b>") return mk(BinOp::BUGt, 8);
            if (s == "b>=") return mk(BinOp::BUGe, 8);
            if (s == "bs<") return mk(BinOp::BSLt, 8);
            if (s == "bs<=") return mk(BinOp::BSLe, 8);
            if (s == "bs>") return mk(BinOp::BSGt, 8);
            if (s == "bs>=") return mk(BinOp::BSGe, 8);
            if (s == "<<") return mk(BinOp::Shl, 10);
            if (s == ">>") return mk(BinOp::Shr, 10);
            if (s == ">>s") return mk(BinOp::Sar, 10);
            if (s == "+") return mk(BinOp::Add, 11);
            if (s == "-") return mk(BinOp::Sub, 11);
            if (s == "b+") return mk(BinOp::BAdd, 11);
            if (s == "b-") return mk(BinOp::BSub, 11);
            if (s == "*") return mk(BinOp::Mul, 12);
            if (s == "/") return mk(BinOp::Div, 12);
            if (s == "b*") return mk(BinOp::BMul, 12);
            if (s == "b/") return mk(BinOp::BDiv, 12);
            return false;
        }
        if (t.is(Token::Ident)) {
            const std::string& s = t.text;
            if (s == "band") return mk(BinOp::BAnd, 6);
            if (s == "bxor") return mk(BinOp::BXor, 5);
            if (s == "bor") return mk(BinOp::BOr, 4);
            if (s == "in") return mk(BinOp::InSet, 8);
            if (s == "subseteq") return mk(BinOp::Subseteq, 8);
            if (s == "union") return mk(BinOp::Union, 9);
            if (s == "intersect") return mk(BinOp::Intersect, 9);
            if (s == "setminus") return mk(BinOp::SetMinus, 9);
            return false;
        }
        return false;
    }

    ExprPtr parseExprTop() {
        Pos pos = peek().pos;
        if (atKw("if")) {
            take();
            ExprPtr c = parseExprTop();
            expectKw("then");
            ExprPtr t = parseExprTop();
            expectKw("else");
            ExprPtr f = parseExprTop();
            return mkExpr(ex::IfE{c, t, f}, pos);
        }
        if (atKw("let")) {
            take();
            std::string x = expectIdent();
            expectSym(":");
            TypePtr ty = parseType();
            expectSym("=");
            ExprPtr bind = parseBin(1, /*noIn=*/true);
            expectKw("in");
            ExprPtr body = parseExprTop();
            return mkExpr(ex::LetIn{x, ty, bind, body}, pos);
        }
        if (atKw("forall") || atKw("exists")) {
            bool fa = take().text == "forall";
            std::string x = expectIdent();
            expectKw("in");
            ExprPtr set = parseBin(1);
            expectSym(".");
            ExprPtr body = parseExprTop();
            return mkExpr(ex::Quant{fa, x, set, body}, pos);
        }
        return parseBin(1);
    }

    // `noIn` suppresses the membership operator at the top level, so a
    // let's `in` keyword is not swallowed; parenthesize membership there.
    ExprPtr parseBin(int minPrec, bool noIn = false) {
        ExprPtr lhs = parseUnary();
        for (;;) {
            OpInfo info;
            if (!binOpInfo(info) || info.prec < minPrec) break;
            if (noIn && info.op == BinOp::InSet) break;
            Pos pos = take().pos;
            ExprPtr rhs = parseBin(info.prec + 1, noIn);
            lhs = mkExpr(ex::Binop{info.op, lhs, rhs}, pos);
        }
        return lhs;
    }

    ExprPtr parseUnary() {
        Pos pos = peek().pos;
        if (atSym("-")) {
            take();
            return mkExpr(ex::Unop{UnOp::Neg, parseUnary()}, pos);
        }
        if (atSym("!")) {
            take();
            return mkExpr(ex::Unop{UnOp::LNot, parseUnary()}, pos);
        }
        if (atSym("~")) {
            take();
            return mkExpr(ex::Unop{UnOp::BNot, parseUnary()}, pos);
        }
        if (atSym("*")) {
            take();
            return mkExpr(ex::Deref{parseUnary()}, pos);
        }
        return parsePostfix();
    }

    ExprPtr parsePostfix() {
        ExprPtr e = parsePrimary();
        for (;;) {
            Pos pos = peek().pos;
            if (atSym(".") && peek(1).is(Token::Ident, "txt")) {
                take();
                take();
                e = mkExpr(ex::TxtOf{e}, pos);
                continue;
            }
            if (atSym("(") && e->is<ex::Id>()) {
                take();
                std::vector<ExprPtr> args;
                if (!atSym(")")) {
                    for (;;) {
                        args.push_back(parseExprTop());
                        if (!eatSym(",")) break;
                    }
                }
                expectSym(")");
                e = mkExpr(ex::App{e->as<ex::Id>().name, std::move(args)}, e->pos);
                continue;
            }
            if (atSym("[")) {
                take();
                long long lo = expectIntLit();
                if (eatSym(":")) {
                    long long hi = expectIntLit();
                    expectSym("]");
                    e = mkExpr(ex::Slice{e, lo, hi}, pos);
                } else {
                    expectSym("]");
                    e = mkExpr(ex::Index{e, lo}, pos);
                }
                continue;
            }
            break;
        }
        return e;
    }

    ExprPtr parsePrimary() {
        Pos pos = peek().pos;
        if (at(Token::IntLit))
            return mkExpr(ex::Lit{Value::ofInt(take().ival)}, pos);
        if (at(Token::BVLit)) {
            const Token& t = take();
            return mkExpr(ex::Lit{Value::ofBV(BitVec(t.bvWidth, t.ival))}, pos);
        }
        if (at(Token::StrLit))
            return mkExpr(ex::Lit{Value::ofString(take().text)}, pos);
        if (atKw("true")) {
            take();
            return mkExpr(ex::Lit{Value::ofBool(true)}, pos);
        }
        if (atKw("false")) {
            take();
            return mkExpr(ex::Lit{Value::ofBool(false)}, pos);
        }
        if (atSym("(")) {
            take();
            if (eatSym(")")) return mkExpr(ex::Lit{Value::unit()}, pos);
            ExprPtr e = parseExprTop();
            expectSym(")");
            return e;
        }
        if (atSym("[")) {
            take();
            // [region, e] is a pointer literal; [e]:w is a memory fetch
            if (at(Token::Ident) && peek(1).is(Token::Sym, ",")) {
                std::string region = take().text;
                take();  // comma
                ExprPtr off = parseExprTop();
                expectSym("]");
                return mkExpr(ex::PtrLit{region, off}, pos);
            }
            ExprPtr addr = parseExprTop();
            expectSym("]");
            expectSym(":");
            SymConst w = parseWidth();
            return mkExpr(ex::Fetch{addr, w}, pos);
        }
        if (atSym("{")) {
            take();
            std::vector<ExprPtr> elems;
            for (;;) {
                elems.push_back(parseExprTop());
                if (!eatSym(",")) break;
            }
            expectSym("}");
            return mkExpr(ex::RegSetLit{std::move(elems)}, pos);
        }
        if (atSym("|")) {
            take();
            ExprPtr e = parseExprTop();
            expectSym("|");
            return mkExpr(ex::SetSize{e}, pos);
        }
        if (at(Token::Ident)) return mkExpr(ex::Id{take().text}, pos);
        err("expected expression");
    }

    // ----- statements -----

    bool atStmtEnd() const {
        return at(Token::Eof) || atSym("}") || atSym(")") || atKw("done");
    }

    StmtPtr parseStmtSeq() {
        Pos pos = peek().pos;
        std::vector<StmtPtr> stmts;
        for (;;) {
            stmts.push_back(parseOneStmt());
            if (!eatSym(";")) break;
            if (atStmtEnd()) break;  // tolerate a trailing separator
        }
        return mkSeq(std::move(stmts), pos);
    }

    StmtPtr parseOneStmt() {
        Pos pos = peek().pos;
        if (atKw("skip")) {
            take();
            return mkStmt(st::Skip{}, pos);
        }
        if (atKw("crash")) {
            take();
            return mkStmt(st::Crash{}, pos);
        }
        if (atKw("assert")) {
            take();
            expectSym("(");
            ExprPtr e = parseExprTop();
            expectSym(")");
            return mkStmt(st::Assert{e}, pos);
        }
        if (atKw("if")) {
            take();
            ExprPtr c = parseExprTop();
            expectKw("then");
            expectSym("{");
            StmtPtr t = parseStmtSeq();
            expectSym("}");
            expectKw("else");
            expectSym("{");
            StmtPtr f = parseStmtSeq();
            expectSym("}");
            return mkStmt(st::IfS{c, t, f}, pos);
        }
        if (atKw("for")) {
            take();
            std::string x = expectIdent();
            expectKw("in");
            long long lo = expectIntLit();
            expectSym("..");
            long long hi = expectIntLit();
            expectKw("do");
            StmtPtr body = parseStmtSeq();
            expectKw("done");
            return mkStmt(st::For{x, lo, hi, body}, pos);
        }
        if (atKw("let")) {
            take();
            std::string x = expectIdent();
            expectSym(":");
            TypePtr ty = parseType();
            expectSym("=");
            ExprPtr bind = parseBin(1, /*noIn=*/true);
            expectKw("in");
            // the let scopes over the rest of the enclosing sequence
            StmtPtr body = parseStmtSeq();
            return mkStmt(st::LetS{x, ty, bind, body}, pos);
        }
        if (atSym("(")) {
            take();
            StmtPtr s = parseStmtSeq();
            expectSym(")");
            return s;
        }
        if (atSym("*")) {
            take();
            ExprPtr loc = parseUnary();
            expectSym("<-");
            ExprPtr val = parseExprTop();
            return mkStmt(st::RegAssign{loc, val}, pos);
        }
        if (atSym("[")) {
            take();
            ExprPtr addr = parseExprTop();
            expectSym("]");
            expectSym(":");
            SymConst w = parseWidth();
            expectSym("<-");
            ExprPtr val = parseExprTop();
            return mkStmt(st::Store{addr, w, val}, pos);
        }
        if (at(Token::Ident) && peek(1).is(Token::Sym, "(")) {
            std::string name = take().text;
            take();
            std::vector<ExprPtr> args;
            if (!atSym(")")) {
                for (;;) {
                    args.push_back(parseExprTop());
                    if (!eatSym(",")) break;
                }
            }
            expectSym(")");
            return mkStmt(st::Call{name, std::move(args)}, pos);
        }
        err("expected statement");
    }

    // ----- declarations -----

    std::vector<Param> parseParams() {
        expectSym("(");
        std::vector<Param> ps;
        if (!atSym(")")) {
            for (;;) {
                std::string x = expectIdent();
                expectSym(":");
                ps.push_back(Param{x, parseType()});
                if (!eatSym(",")) break;
            }
        }
        expectSym(")");
        return ps;
    }

    bool atDecl() const {
        return atKw("type") || atKw("let") || atKw("letstate") || atKw("def") ||
               atKw("proc") || atKw("defop") || atKw("include");
    }

    DeclPtr parseDecl(std::vector<DeclPtr>* sink) {
        Pos pos = peek().pos;
        if (atKw("include")) {
            take();
            if (!at(Token::StrLit)) err("expected file name");
            std::string rel = take().text;
            expectSym(";;");
            resolveInclude(rel, pos, *sink);
            return nullptr;
        }
        if (eatKw("type")) {
            std::string name = expectIdent();
            expectSym("=");
            TypePtr ty = parseType();
            expectSym(";;");
            return mkDecl(dc::TypeAlias{name, ty}, pos);
        }
        if (eatKw("let")) {
            std::string name = expectIdent();
            expectSym(":");
            TypePtr ty = parseType();
            expectSym("=");
            ExprPtr e = parseExprTop();
            expectSym(";;");
            return mkDecl(dc::Let{name, ty, e}, pos);
        }
        if (eatKw("letstate")) {
            std::string name = expectIdent();
            expectSym(":");
            TypePtr ty = parseType();
            std::optional<std::string> text;
            if (eatKw("txt")) {
                if (!at(Token::StrLit)) err("expected string literal");
                text = take().text;
            }
            std::optional<std::string> label;
            if (eatKw("with")) label = expectIdent("label name");
            expectSym(";;");
            return mkDecl(dc::LetState{name, ty, text, label}, pos);
        }
        if (eatKw("def")) {
            std::string name = expectIdent();
            auto ps = parseParams();
            expectSym(":");
            TypePtr ret = parseType();
            expectSym("=");
            ExprPtr body = parseExprTop();
            expectSym(";;");
            return mkDecl(dc::Def{name, ps, ret, body}, pos);
        }
        if (eatKw("proc")) {
            std::string name = expectIdent();
            auto ps = parseParams();
            expectSym("{");
            StmtPtr body = parseStmtSeq();
            expectSym("}");
            expectSym(";;");
            return mkDecl(dc::Proc{name, ps, body}, pos);
        }
        if (eatKw("defop")) {
            Defop op;
            op.pos = pos;
            op.name = expectIdent();
            if (eatSym("[")) {
                if (!atSym("]")) {
                    for (;;) {
                        std::string x = expectIdent();
                        expectSym(":");
                        op.params.push_back(Param{x, parseType()});
                        if (!eatSym(",")) break;
                    }
                }
                expectSym("]");
            }
            expectSym("{");
            expectKw("txt");
            expectSym("=");
            op.txt = parseExprTop();
            expectSym(",");
            expectKw("sem");
            expectSym("=");
            op.sem = parseStmtSeq();
            expectSym("}");
            expectSym(";;");
            return mkDecl(dc::Op{std::move(op)}, pos);
        }
        err("expected declaration");
    }

    void resolveInclude(const std::string& rel, Pos pos, std::vector<DeclPtr>& sink) {
        if (!inc_) throw Diag("ParseError", "include is not allowed here", pos);
        fs::path p = inc_->baseDir / rel;
        std::error_code ec;
        fs::path canon = fs::weakly_canonical(p, ec);
        std::string key = (ec ? p : canon).string();
        if (inc_->stack->count(key))
            throw Diag("IncludeCycle", "circular include of '" + rel + "'", pos);
        if (inc_->seen->count(key)) return;  // inline each file once
        inc_->seen->insert(key);
        inc_->stack->insert(key);
        std::string sub = readFile(key);
        IncludeCtx ctx{fs::path(key).parent_path(), inc_->seen, inc_->stack};
        auto decls = parseMachineDecls(sub, &ctx);
        sink.insert(sink.end(), decls.begin(), decls.end());
        inc_->stack->erase(key);
    }

    std::vector<DeclPtr> parseDecls() {
        std::vector<DeclPtr> out;
        while (atDecl()) {
            // stop at spec-level lets followed by frame/pre clauses? handled
            // by callers: frame/pre keywords are not decl keywords.
            DeclPtr d = parseDecl(&out);
            if (d) out.push_back(d);
        }
        return out;
    }

    // ----- file-level forms -----

    Machine parseMachineTop() {
        Machine m;
        m.decls = parseDecls();
        expectEof();
        return m;
    }

    Frame parseFrameClauses() {
        Frame fr;
        if (eatKw("reg-modify")) {
            expectSym(":");
            if (!atSym(";;")) {
                for (;;) {
                    fr.regs.push_back(parseExprTop());
                    if (!eatSym(",")) break;
                }
            }
            expectSym(";;");
        }
        if (eatKw("mem-modify")) {
            expectSym(":");
            if (!atSym(";;")) {
                for (;;) {
                    fr.memRefs.push_back(parseExprTop());
                    if (!eatSym(",")) break;
                }
            }
            expectSym(";;");
        }
        return fr;
    }

    Spec parseSpecTop() {
        Spec s;
        s.decls = parseDecls();
        s.frame = parseFrameClauses();
        expectKw("pre");
        expectSym(":");
        s.pre = parseExprTop();
        expectSym(";;");
        expectKw("post");
        expectSym(":");
        s.post = parseExprTop();
        expectSym(";;");
        expectEof();
        return s;
    }

    Program parseProgramTop() {
        Program p;
        for (;;) {
            while (eatSym(";")) {}
            if (at(Token::Eof)) break;
            Inst inst;
            inst.pos = peek().pos;
            inst.op = expectIdent("instruction name");
            int line = inst.pos.line;
            while (!at(Token::Eof) && !atSym(";") && peek().pos.line == line)
                inst.args.push_back(parseOperand());
            p.insts.push_back(std::move(inst));
        }
        return p;
    }

    ExprPtr parseOperand() {
        // operands are compact: literals, names, deref/negation of such,
        // or any expression in parentheses
        Pos pos = peek().pos;
        if (atSym("-")) {
            take();
            return mkExpr(ex::Unop{UnOp::Neg, parseOperand()}, pos);
        }
        if (atSym("*")) {
            take();
            return mkExpr(ex::Deref{parseOperand()}, pos);
        }
        return parsePrimary();
    }

    // ----- spec language -----

    AleDeclPtr parseAleDeclOne() {
        Pos pos = peek().pos;
        if (eatKw("require")) {
            if (eatKw("type")) {
                std::string name = expectIdent();
                expectSym(";;");
                return mkAleDecl(ale::RequireType{name}, pos);
            }
            if (eatKw("value")) {
                std::string name = expectIdent();
                expectSym(":");
                AleTypePtr ty = parseAleType();
                expectSym(";;");
                return mkAleDecl(ale::RequireValue{name, ty}, pos);
            }
            expectKw("func");
            std::string name = expectIdent();
            expectSym(":");
            AleTypePtr ty = parseAleFuncType();
            expectSym(";;");
            return mkAleDecl(ale::RequireFunc{name, ty}, pos);
        }
        if (eatKw("provide")) {
            if (eatKw("type")) {
                std::string name = expectIdent();
                expectSym("=");
                AleTypePtr ty = parseAleType();
                expectSym(";;");
                return mkAleDecl(ale::ProvideType{name, ty}, pos);
            }
            if (eatKw("value")) {
                std::string name = expectIdent();
                expectSym(":");
                AleTypePtr ty = parseAleType();
                expectSym("=");
                ExprPtr e = parseExprTop();
                expectSym(";;");
                return mkAleDecl(ale::ProvideValue{name, ty, e}, pos);
            }
            expectKw("func");
            std::string name = expectIdent();
            expectSym("(");
            std::vector<std::pair<std::string, AleTypePtr>> ps;
            if (!atSym(")")) {
                for (;;) {
                    std::string x = expectIdent();
                    expectSym(":");
                    ps.emplace_back(x, parseAleType());
                    if (!eatSym(",")) break;
                }
            }
            expectSym(")");
            expectSym(":");
            AleTypePtr ret = parseAleType();
            expectSym("=");
            ExprPtr body = parseExprTop();
            expectSym(";;");
            return mkAleDecl(ale::ProvideFunc{name, ps, ret, body}, pos);
        }
        if (eatKw("region")) {
            std::string name = expectIdent();
            expectSym(":");
            AleTypePtr ty = parseAleType();
            std::optional<std::string> label;
            if (eatKw("with")) label = expectIdent("label name");
            expectSym(";;");
            return mkAleDecl(ale::Region{name, ty, label}, pos);
        }
        if (eatKw("let")) {
            std::string name = expectIdent();
            expectSym(":");
            AleTypePtr ty = parseAleType();
            expectSym("=");
            ExprPtr e = parseExprTop();
            expectSym(";;");
            return mkAleDecl(ale::Let{name, ty, e}, pos);
        }
        err("expected declaration");
    }

    AleSpec parseAleTop() {
        AleSpec s;
        while (atKw("require") || atKw("provide") || atKw("region") || atKw("let"))
            s.decls.push_back(parseAleDeclOne());
        expectKw("block");
        s.block = expectIdent("block name");
        expectSym("{");
        while (atKw("let")) s.blockLets.push_back(parseAleDeclOne());
        Frame fr = parseFrameClauses();
        s.regModify = std::move(fr.regs);
        s.memModify = std::move(fr.memRefs);
        expectKw("pre");
        expectSym(":");
        s.pre = parseExprTop();
        expectSym(";;");
        expectKw("post");
        expectSym(":");
        s.post = parseExprTop();
        expectSym(";;");
        expectSym("}");
        expectEof();
        return s;
    }

    MapFile parseMapTop() {
        MapFile mf;
        mf.common = parseDecls();
        while (atKw("module")) {
            take();
            MapModule m;
            m.name = expectIdent("module name");
            expectSym("{");
            m.decls = parseDecls();
            m.frame = parseFrameClauses();
            expectSym("}");
            mf.modules.push_back(std::move(m));
        }
        expectEof();
        return mf;
    }

    std::vector<DeclPtr> parseDeclsTop() {
        auto ds = parseDecls();
        expectEof();
        return ds;
    }

private:
    std::vector<Token> toks_;
    size_t i_ = 0;
    const IncludeCtx* inc_;
};

std::vector<DeclPtr> parseMachineDecls(const std::string& src, const IncludeCtx* inc) {
    Parser p(src, inc);
    return p.parseDeclsTop();
}

} // namespace

Machine parseMachine(const std::string& src) { return Parser(src).parseMachineTop(); }

Machine parseMachineFile(const std::string& path) {
    std::set<std::string> seen, stack;
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(path, ec);
    std::string key = (ec ? fs::path(path) : canon).string();
    seen.insert(key);
    stack.insert(key);
    IncludeCtx ctx{fs::path(key).parent_path(), &seen, &stack};
    Machine m;
    m.decls = parseMachineDecls(readFile(path), &ctx);
    return m;
}

Spec parseSpec(const std::string& src) { return Parser(src).parseSpecTop(); }
Spec parseSpecFile(const std::string& path) { return parseSpec(readFile(path)); }

Program parseProgram(const std::string& src) { return Parser(src).parseProgramTop(); }
Program parseProgramFile(const std::string& path) {
    return parseProgram(readFile(path));
}

AleSpec parseAleSpec(const std::string& src) { return Parser(src).parseAleTop(); }
AleSpec parseAleSpecFile(const std::string& path) {
    return parseAleSpec(readFile(path));
}

MapFile parseMapFile(const std::string& src) { return Parser(src).parseMapTop(); }
MapFile parseMapFileAt(const std::string& path) {
    return parseMapFile(readFile(path));
}

ExprPtr parseExpr(const std::string& src) {
    Parser p(src);
    ExprPtr e = p.parseExprTop();
    p.expectEof();
    return e;
}

StmtPtr parseStmt(const std::string& src) {
    Parser p(src);
    StmtPtr s = p.parseStmtSeq();
    p.expectEof();
    return s;
}

TypePtr parseType(const std::string& src) {
    Parser p(src);
    TypePtr t = p.parseType();
    p.expectEof();
    return t;
}

} // namespace casp
