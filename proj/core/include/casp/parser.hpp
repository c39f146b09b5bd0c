#pragma once

#include <string>

#include "casp/ast.hpp"

namespace casp {

// String-level entry points. Sources that use include directives must go
// through the *File variants, which resolve paths relative to the
// including file and inline each file at most once.
Machine parseMachine(const std::string& src);
Machine parseMachineFile(const std::string& path);

Spec parseSpec(const std::string& src);
Spec parseSpecFile(const std::string& path);

Program parseProgram(const std::string& src);
Program parseProgramFile(const std::string& path);

AleSpec parseAleSpec(const std::string& src);
AleSpec parseAleSpecFile(const std::string& path);

MapFile parseMapFile(const std::string& src);
MapFile parseMapFileAt(const std::string& path);

// Single-construct helpers, mainly for tests.
ExprPtr parseExpr(const std::string& src);
StmtPtr parseStmt(const std::string& src);
TypePtr parseType(const std::string& src);

std::string readFile(const std::string& path);

} // namespace casp
