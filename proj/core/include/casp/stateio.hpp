#pragma once

#include <string>

#include "casp/interp.hpp"

namespace casp {

// Machine-state files: one assignment per line, unlisted cells stay zero.
//   reg <name> = <0b/0x literal>
//   reg <name> = [<region>, <offset>]       (pointer in a register)
//   mem <region>[<offset>] = <literal>
void applyStateText(const std::string& src, Interp& I);
void applyStateFile(const std::string& path, Interp& I);

// Renders the current state in the same format.
std::string renderState(const Interp& I);

} // namespace casp
