#pragma once

#include "casp/ast.hpp"
#include "casp/env.hpp"

namespace casp {

// Evaluation context: the declaration environment plus the machine state.
// Copyable, so a verifier can snapshot the machine-level context and replay
// from it.
struct Interp {
    Env env;
    MachineState state;
    uint32_t nextReg = 1;
    std::map<std::string, TypePtr> aliases;

    // Which declarations to process; used by the verifier to split state
    // allocation (done once) from value bindings (done per state).
    enum class Filter { All, StateOnly, ValueOnly };

    void addDecl(const DeclPtr& d, Filter f = Filter::All);
    void addDecls(const std::vector<DeclPtr>& ds, Filter f = Filter::All);

    // Alias-free view of a declared type.
    TypePtr resolve(const TypePtr& t) const;

private:
    std::vector<DeclPtr> owned_;  // keeps operation definitions alive
};

// Local bindings introduced by scoped lets, loop indices, and call frames.
struct Scope {
    std::map<std::string, Value> vars;

    const Value* lookup(const std::string& name) const {
        auto it = vars.find(name);
        return it == vars.end() ? nullptr : &it->second;
    }
};

// Expressions are pure: they read but never write the machine state, and
// every dynamic error is the failure value.
Value evalExpr(const Expr& e, const Interp& I, const Scope& sc);

// Statement outcome: normal completion or a crash.
enum class Outcome { Done, Crash };

Outcome execStmt(const Stmt& s, Interp& I, Scope& sc);

// Runs each instruction: evaluates operands, binds them to the operation's
// parameters in a fresh scope, and executes its semantics.
Outcome runProgram(const Program& p, Interp& I);

// Renders a program to assembly text using each operation's txt clause.
// Returns the failure value if any txt evaluation fails.
Value extractText(const Program& p, const Interp& I);

} // namespace casp
