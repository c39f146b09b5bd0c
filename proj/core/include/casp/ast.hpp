#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casp/diag.hpp"
#include "casp/types.hpp"
#include "casp/value.hpp"

namespace casp {

// One expression/statement AST serves both languages. Machine-description
// sources always carry literal widths; spec-language sources may carry
// symbolic widths and quantifiers, which lowering eliminates before the
// machine-level checker ever sees them.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

enum class UnOp {
    Neg,   // - (int)
    LNot,  // ! (bool)
    BNot,  // ~ (bitvector)
};

enum class BinOp {
    Add, Sub, Mul, Div,                    // int arithmetic
    Lt, Le, Gt, Ge,                        // int comparison
    Eq, Ne,                                // any equal base type
    LAnd, LOr, LXor,                       // bool
    BAdd, BSub, BMul, BDiv,                // bitvector arithmetic
    Shl, Shr, Sar,                         // shifts (Sar = arithmetic right)
    BAnd, BOr, BXor,                       // bitwise
    BULt, BULe, BUGt, BUGe,                // unsigned bitvector comparison
    BSLt, BSLe, BSGt, BSGe,                // signed bitvector comparison
    Union, Intersect, Subseteq, SetMinus,  // register sets
    InSet,                                 // membership
};

const char* unopName(UnOp op);
const char* binopName(BinOp op);

namespace ex {

struct Lit { Value v; };
struct Id { std::string name; };
struct Deref { ExprPtr e; };                               // *e
struct Fetch { ExprPtr addr; SymConst width; };            // [e]:C
struct Index { ExprPtr e; long long idx; };                // e[C]
struct Slice { ExprPtr e; long long lo; long long hi; };   // e[C1:C2]
struct Unop { UnOp op; ExprPtr e; };
struct Binop { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct App { std::string fn; std::vector<ExprPtr> args; };
struct LetIn { std::string name; TypePtr ty; ExprPtr bind; ExprPtr body; };
struct IfE { ExprPtr cond; ExprPtr then_; ExprPtr else_; };
struct PtrLit { std::string region; ExprPtr off; };        // [region, e]
struct RegSetLit { std::vector<ExprPtr> elems; };          // {a, b}
struct TxtOf { ExprPtr e; };                               // e.txt
struct SetSize { ExprPtr e; };                             // |e|
struct Quant { bool isForall; std::string var; ExprPtr set; ExprPtr body; };

} // namespace ex

struct Expr {
    using Rep = std::variant<ex::Lit, ex::Id, ex::Deref, ex::Fetch, ex::Index,
                             ex::Slice, ex::Unop, ex::Binop, ex::App, ex::LetIn,
                             ex::IfE, ex::PtrLit, ex::RegSetLit, ex::TxtOf,
                             ex::SetSize, ex::Quant>;
    Rep rep;
    Pos pos{};

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

ExprPtr mkExpr(Expr::Rep rep, Pos pos = {});

// Structural equality; positions are ignored.
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

namespace st {

struct Skip {};
struct Crash {};
struct Assert { ExprPtr e; };
struct RegAssign { ExprPtr loc; ExprPtr val; };                 // *e1 <- e2
struct Store { ExprPtr addr; SymConst width; ExprPtr val; };    // [e]:C <- e2
struct Seq { std::vector<StmtPtr> stmts; };
struct IfS { ExprPtr cond; StmtPtr then_; StmtPtr else_; };
struct For { std::string var; long long lo; long long hi; StmtPtr body; };
struct LetS { std::string name; TypePtr ty; ExprPtr bind; StmtPtr body; };
struct Call { std::string name; std::vector<ExprPtr> args; };

} // namespace st

struct Stmt {
    using Rep = std::variant<st::Skip, st::Crash, st::Assert, st::RegAssign,
                             st::Store, st::Seq, st::IfS, st::For, st::LetS,
                             st::Call>;
    Rep rep;
    Pos pos{};

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

StmtPtr mkStmt(Stmt::Rep rep, Pos pos = {});

// Builds a sequence, flattening nested sequences and dropping the wrapper
// for a single statement, so equal programs have one representation.
StmtPtr mkSeq(std::vector<StmtPtr> stmts, Pos pos = {});

bool operator==(const Stmt& a, const Stmt& b);
inline bool operator!=(const Stmt& a, const Stmt& b) { return !(a == b); }

// ---------------------------------------------------------------------
// Declarations and top-level forms

struct Param {
    std::string name;
    TypePtr ty;
};
bool operator==(const Param& a, const Param& b);
inline bool operator!=(const Param& a, const Param& b) { return !(a == b); }

struct Defop {
    std::string name;
    std::vector<Param> params;
    ExprPtr txt;
    StmtPtr sem;
    Pos pos{};
};
bool operator==(const Defop& a, const Defop& b);
inline bool operator!=(const Defop& a, const Defop& b) { return !(a == b); }

struct Decl;
using DeclPtr = std::shared_ptr<const Decl>;

namespace dc {

struct TypeAlias { std::string name; TypePtr ty; };
struct Let { std::string name; TypePtr ty; ExprPtr e; };
// letstate x : C bit loc [txt "..."]   (fresh register, assembly spelling)
// letstate m : mem-type [with L]       (memory region, optional label)
struct LetState { std::string name; TypePtr ty; std::optional<std::string> text;
                  std::optional<std::string> label; };
struct Def { std::string name; std::vector<Param> params; TypePtr ret; ExprPtr body; };
struct Proc { std::string name; std::vector<Param> params; StmtPtr body; };
struct Op { Defop op; };

} // namespace dc

struct Decl {
    using Rep = std::variant<dc::TypeAlias, dc::Let, dc::LetState, dc::Def,
                             dc::Proc, dc::Op>;
    Rep rep;
    Pos pos{};

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

DeclPtr mkDecl(Decl::Rep rep, Pos pos = {});
bool operator==(const Decl& a, const Decl& b);
inline bool operator!=(const Decl& a, const Decl& b) { return !(a == b); }

const std::string& declName(const Decl& d);

struct Machine {
    std::vector<DeclPtr> decls;  // defops included, source order preserved
};
bool operator==(const Machine& a, const Machine& b);
inline bool operator!=(const Machine& a, const Machine& b) { return !(a == b); }

struct Frame {
    std::vector<ExprPtr> regs;     // reg-modify
    std::vector<ExprPtr> memRefs;  // mem-modify (pointer expressions)
};
bool operator==(const Frame& a, const Frame& b);
inline bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

// Machine-level specification: decls, frame, precondition, postcondition.
struct Spec {
    std::vector<DeclPtr> decls;
    Frame frame;
    ExprPtr pre;
    ExprPtr post;
};
bool operator==(const Spec& a, const Spec& b);
inline bool operator!=(const Spec& a, const Spec& b) { return !(a == b); }

struct Inst {
    std::string op;
    std::vector<ExprPtr> args;
    Pos pos{};
};
bool operator==(const Inst& a, const Inst& b);
inline bool operator!=(const Inst& a, const Inst& b) { return !(a == b); }

struct Program {
    std::vector<Inst> insts;
};
bool operator==(const Program& a, const Program& b);
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

// ---------------------------------------------------------------------
// Spec-language (machine-independent) forms

struct AleDecl;
using AleDeclPtr = std::shared_ptr<const AleDecl>;

namespace ale {

struct RequireType { std::string name; };
struct RequireValue { std::string name; AleTypePtr ty; };
struct RequireFunc { std::string name; AleTypePtr ty; };
struct ProvideType { std::string name; AleTypePtr ty; };
struct ProvideValue { std::string name; AleTypePtr ty; ExprPtr e; };
struct ProvideFunc { std::string name; std::vector<std::pair<std::string, AleTypePtr>> params;
                     AleTypePtr ret; ExprPtr body; };
struct Region { std::string name; AleTypePtr ty; std::optional<std::string> label; };
struct Let { std::string name; AleTypePtr ty; ExprPtr e; };

} // namespace ale

struct AleDecl {
    using Rep = std::variant<ale::RequireType, ale::RequireValue, ale::RequireFunc,
                             ale::ProvideType, ale::ProvideValue, ale::ProvideFunc,
                             ale::Region, ale::Let>;
    Rep rep;
    Pos pos{};

    template <class T> bool is() const { return std::holds_alternative<T>(rep); }
    template <class T> const T& as() const { return std::get<T>(rep); }
};

AleDeclPtr mkAleDecl(AleDecl::Rep rep, Pos pos = {});
bool operator==(const AleDecl& a, const AleDecl& b);
inline bool operator!=(const AleDecl& a, const AleDecl& b) { return !(a == b); }

const std::string& aleDeclName(const AleDecl& d);

struct AleSpec {
    std::vector<AleDeclPtr> decls;
    std::string block;               // matched against a mapping module name
    std::vector<AleDeclPtr> blockLets;
    std::vector<ExprPtr> regModify;
    std::vector<ExprPtr> memModify;
    ExprPtr pre;
    ExprPtr post;
};
bool operator==(const AleSpec& a, const AleSpec& b);
inline bool operator!=(const AleSpec& a, const AleSpec& b) { return !(a == b); }

// A mapping module supplies machine-level declarations for one block name.
struct MapModule {
    std::string name;
    std::vector<DeclPtr> decls;
    Frame frame;
};
bool operator==(const MapModule& a, const MapModule& b);
inline bool operator!=(const MapModule& a, const MapModule& b) { return !(a == b); }

struct MapFile {
    std::vector<DeclPtr> common;  // declarations shared by all modules
    std::vector<MapModule> modules;
};
bool operator==(const MapFile& a, const MapFile& b);
inline bool operator!=(const MapFile& a, const MapFile& b) { return !(a == b); }

} // namespace casp
