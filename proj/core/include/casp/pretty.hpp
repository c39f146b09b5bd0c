#pragma once

#include <string>

#include "casp/ast.hpp"

namespace casp {

// Concrete-syntax rendering. For every construct, parsing the rendered
// text yields a structurally equal tree.
std::string pretty(const Type& t);
std::string pretty(const AleType& t);
std::string pretty(const SymConst& c);
std::string pretty(const Expr& e);
std::string pretty(const Stmt& s, int indent = 0);
std::string pretty(const Decl& d);
std::string pretty(const Defop& op);
std::string pretty(const Machine& m);
std::string pretty(const Frame& f);
std::string pretty(const Spec& s);
std::string pretty(const Inst& i);
std::string pretty(const Program& p);
std::string pretty(const AleDecl& d);
std::string pretty(const AleSpec& s);
std::string pretty(const MapModule& m);
std::string pretty(const MapFile& m);

} // namespace casp
