#pragma once

#include <string>
#include <vector>

#include "casp/value.hpp"

namespace casp {

struct Interp;

bool isBuiltin(const std::string& name);

// Applies a builtin to already-evaluated arguments. The caller guarantees
// `name` is a builtin; any argument or shape problem yields the failure
// value, never an exception.
Value callBuiltin(const std::string& name, const std::vector<Value>& args,
                  const Interp& I);

} // namespace casp
