#pragma once

#include <map>
#include <string>
#include <vector>

#include "casp/ast.hpp"

namespace casp {

struct LowerOptions {
    bool allowQuantifiers = true;  // expand forall/exists over literal sets
    bool emitMapTrace = false;     // record how each name was satisfied
};

struct LowerResult {
    Spec spec;
    std::vector<std::string> trace;
};

// Constants usable as widths during lowering: machine-level
// `let x : int = <literal>` declarations, collected syntactically.
std::map<std::string, long long> extractConstants(const std::vector<DeclPtr>& decls);

// Lowers a machine-independent spec to a machine-level one using the
// mapping module whose name matches the spec's block. The result is
// re-checked against the machine before being returned.
LowerResult lowerSpec(const Machine& m, const MapFile& maps, const AleSpec& ale,
                      const LowerOptions& opt = {});

// Individual pieces, exposed for tests.
TypePtr lowerType(const AleType& t, const std::map<std::string, long long>& consts,
                  Pos pos = {});

} // namespace casp
