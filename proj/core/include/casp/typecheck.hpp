#pragma once

#include <map>

#include "casp/ast.hpp"

namespace casp {

// Typing context built from declarations: type aliases, variable types,
// and operation signatures. All entries hold alias-free types.
struct TypeEnvs {
    std::map<std::string, TypePtr> gamma;                // alias -> type
    std::map<std::string, TypePtr> delta;                // name -> type
    std::map<std::string, std::vector<TypePtr>> ops;     // operation signatures
};

// Checks a machine description. Declaration initializers in a machine may
// not reference machine state (register contents or memory).
TypeEnvs typeMachine(const Machine& m);

// Checks a machine-level spec against a machine's typing context. Spec
// declarations may read state; pre and post must be boolean.
void typeSpec(const Spec& s, const TypeEnvs& machineEnvs);

// Checks that each instruction names a known operation and its operands
// match the operation's parameter types.
void typeProgram(const Program& p, const TypeEnvs& machineEnvs);

// Expression/statement entry points for direct use in tests.
// `stateOk` permits register-dereference and memory-fetch forms.
TypePtr typeExpr(const Expr& e, const TypeEnvs& envs, bool stateOk = true);
void typeStmt(const Stmt& s, const TypeEnvs& envs);

// Width and shape validity for a declared type (aliases resolved first).
TypePtr resolveType(const TypePtr& t, const TypeEnvs& envs, Pos pos = {});

} // namespace casp
