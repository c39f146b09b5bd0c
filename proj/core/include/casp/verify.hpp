#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "casp/ast.hpp"

namespace casp {

struct VerifyOptions {
    bool exhaustive = true;
    long long samples = 1024;  // used when not exhaustive
    uint64_t seed = 0;
    int capBits = 24;  // exhaustive runs refuse state spaces beyond 2^capBits
    // register name -> region name; the register starts as a pointer to the
    // region base and is excluded from enumeration
    std::vector<std::pair<std::string, std::string>> seedPointers;
};

enum class FailReason {
    None,
    Crash,
    PostFalse,
    FrameRegViolated,
    FrameMemViolated,
    PreUnsatNever,
};

const char* failReasonName(FailReason r);

struct Verdict {
    bool pass = false;
    FailReason reason = FailReason::None;
    long long statesChecked = 0;   // states where the precondition held
    long long preFailures = 0;     // states where the precondition failed to evaluate
    std::string counterState;      // replayable state-file text, empty on pass
    std::string detail;

    std::string render() const;
};

// Checks a program against a spec over concrete machine states: for every
// enumerated (or sampled) state satisfying the precondition, the program
// must complete, establish the postcondition, and touch nothing outside
// the frame. Deterministic for a fixed seed.
Verdict verify(const Machine& m, const Spec& s, const Program& p,
               const VerifyOptions& opt);

} // namespace casp
