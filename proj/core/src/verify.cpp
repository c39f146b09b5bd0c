#include "casp/verify.hpp"

#include <random>
#include <set>

#include "casp/interp.hpp"
#include "casp/stateio.hpp"

namespace casp {

namespace {

struct Dim {
    bool isReg;
    uint32_t regId = 0;
    MemKey key;
    int width = 0;
};

// Collects the registers and memory cells a postcondition (or frame
// expression list) mentions, to augment the declared frame.
struct Mentions {
    std::set<uint32_t> regs;
    std::set<MemKey> cells;
};

void collectMentions(const Expr& e, const Interp& I, const Scope& sc, Mentions& out) {
    using namespace ex;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Id>) {
                Value v = evalExpr(e, I, sc);
                if (v.is<RegId>()) out.regs.insert(v.as<RegId>().id);
            } else if constexpr (std::is_same_v<T, PtrLit>) {
                Value v = evalExpr(e, I, sc);
                if (v.is<Pointer>()) {
                    const auto& p = v.as<Pointer>();
                    out.cells.insert(MemKey{p.region, p.offset});
                }
                collectMentions(*x.off, I, sc, out);
            } else if constexpr (std::is_same_v<T, Fetch>) {
                Value v = evalExpr(*x.addr, I, sc);
                if (v.is<Pointer>()) {
                    const auto& p = v.as<Pointer>();
                    out.cells.insert(MemKey{p.region, p.offset});
                }
                collectMentions(*x.addr, I, sc, out);
            } else if constexpr (std::is_same_v<T, Deref>) {
                collectMentions(*x.e, I, sc, out);
            } else if constexpr (std::is_same_v<T, Index> ||
                                 std::is_same_v<T, Slice> ||
                                 std::is_same_v<T, TxtOf> ||
                                 std::is_same_v<T, SetSize>) {
                collectMentions(*x.e, I, sc, out);
            } else if constexpr (std::is_same_v<T, Unop>) {
                collectMentions(*x.e, I, sc, out);
            } else if constexpr (std::is_same_v<T, Binop>) {
                collectMentions(*x.lhs, I, sc, out);
                collectMentions(*x.rhs, I, sc, out);
            } else if constexpr (std::is_same_v<T, App>) {
                for (const auto& a : x.args) collectMentions(*a, I, sc, out);
            } else if constexpr (std::is_same_v<T, LetIn>) {
                collectMentions(*x.bind, I, sc, out);
                collectMentions(*x.body, I, sc, out);
            } else if constexpr (std::is_same_v<T, IfE>) {
                collectMentions(*x.cond, I, sc, out);
                collectMentions(*x.then_, I, sc, out);
                collectMentions(*x.else_, I, sc, out);
            } else if constexpr (std::is_same_v<T, RegSetLit>) {
                for (const auto& el : x.elems) collectMentions(*el, I, sc, out);
            } else if constexpr (std::is_same_v<T, Quant>) {
                collectMentions(*x.set, I, sc, out);
                collectMentions(*x.body, I, sc, out);
            }
            // literals: nothing
        },
        e.rep);
}

Int drawBits(std::mt19937_64& rng, int width) {
    Int v = 0;
    int got = 0;
    while (got < width) {
        int chunk = std::min(64, width - got);
        uint64_t r = rng();
        if (chunk < 64) r &= (uint64_t(1) << chunk) - 1;
        v |= Int(r) << got;
        got += chunk;
    }
    return v;
}

} // namespace

const char* failReasonName(FailReason r) {
    switch (r) {
    case FailReason::None: return "None";
    case FailReason::Crash: return "Crash";
    case FailReason::PostFalse: return "PostFalse";
    case FailReason::FrameRegViolated: return "FrameRegViolated";
    case FailReason::FrameMemViolated: return "FrameMemViolated";
    case FailReason::PreUnsatNever: return "PreUnsatNever";
    }
    return "?";
}

std::string Verdict::render() const {
    if (pass) return "PASS (" + std::to_string(statesChecked) + " states)";
    std::string out = "FAIL ";
    out += failReasonName(reason);
    if (!detail.empty()) out += " (" + detail + ")";
    if (!counterState.empty()) {
        out += " at state:\n";
        out += counterState;
    } else {
        out += "\n";
    }
    return out;
}

Verdict verify(const Machine& m, const Spec& s, const Program& p,
               const VerifyOptions& opt) {
    Interp base;
    base.addDecls(m.decls, Interp::Filter::All);
    base.addDecls(s.decls, Interp::Filter::StateOnly);

    // pointer-seeded registers hold a fixed pointer and are not enumerated
    std::set<uint32_t> seededRegs;
    for (const auto& [regName, regionName] : opt.seedPointers) {
        const Env::Binding* b = base.env.lookup(regName);
        if (!b || !std::holds_alternative<Value>(*b) ||
            !std::get<Value>(*b).is<RegId>())
            throw Diag("UnknownRegister", "no register '" + regName + "'");
        auto ri = base.state.regions.find(regionName);
        if (ri == base.state.regions.end())
            throw Diag("UnknownRegion", "no region '" + regionName + "'");
        uint32_t id = std::get<Value>(*b).as<RegId>().id;
        const Value& cur = base.state.regs.at(id);
        int w = cur.is<BitVec>() ? cur.as<BitVec>().width() : cur.as<Pointer>().width;
        if (w != ri->second.ptrWidth)
            throw Diag("BadWidth", "register '" + regName +
                                       "' cannot hold a pointer into '" + regionName +
                                       "'");
        base.state.regs[id] =
            Value::ofPtr(Pointer{regionName, 0, ri->second.ptrWidth});
        seededRegs.insert(id);
    }

    std::vector<Dim> dims;
    long long totalBits = 0;
    for (const auto& [id, v] : base.state.regs) {
        if (seededRegs.count(id)) continue;
        int w = v.is<BitVec>() ? v.as<BitVec>().width() : v.as<Pointer>().width;
        dims.push_back(Dim{true, id, {}, w});
        totalBits += w;
    }
    for (const auto& [key, v] : base.state.mem) {
        int w = v.as<BitVec>().width();
        dims.push_back(Dim{false, 0, key, w});
        totalBits += w;
    }

    long long iterations;
    if (opt.exhaustive) {
        if (totalBits > opt.capBits)
            throw Diag("StateSpaceTooLarge",
                       "exhaustive enumeration needs 2^" + std::to_string(totalBits) +
                           " states (cap is 2^" + std::to_string(opt.capBits) + ")");
        iterations = 1LL << totalBits;
    } else {
        iterations = opt.samples;
    }

    std::mt19937_64 rng(opt.seed);
    Verdict verdict;

    for (long long it = 0; it < iterations; ++it) {
        Interp work = base;

        if (opt.exhaustive) {
            long long shift = 0;
            for (const auto& d : dims) {
                Int bits = (Int(it) >> shift) & ((Int(1) << d.width) - 1);
                Value v = Value::ofBV(BitVec(d.width, bits));
                if (d.isReg) work.state.regs[d.regId] = v;
                else work.state.mem[d.key] = v;
                shift += d.width;
            }
        } else {
            for (const auto& d : dims) {
                Value v = Value::ofBV(BitVec(d.width, drawBits(rng, d.width)));
                if (d.isReg) work.state.regs[d.regId] = v;
                else work.state.mem[d.key] = v;
            }
        }

        // spec-level value bindings see the state before the program runs
        work.addDecls(s.decls, Interp::Filter::ValueOnly);

        Scope sc;
        Value pre = evalExpr(*s.pre, work, sc);
        if (!pre.is<bool>()) {
            ++verdict.preFailures;
            continue;
        }
        if (!pre.as<bool>()) continue;  // vacuous

        MachineState before = work.state;
        std::string beforeText = renderState(work);
        ++verdict.statesChecked;

        if (runProgram(p, work) == Outcome::Crash) {
            verdict.pass = false;
            verdict.reason = FailReason::Crash;
            verdict.counterState = beforeText;
            verdict.detail = "program crashed";
            return verdict;
        }

        Value post = evalExpr(*s.post, work, sc);
        if (!post.is<bool>() || !post.as<bool>()) {
            verdict.pass = false;
            verdict.reason = FailReason::PostFalse;
            verdict.counterState = beforeText;
            verdict.detail = post.is<bool>() ? "postcondition false"
                                             : "postcondition failed to evaluate";
            return verdict;
        }

        // augmented frame: the declared frame plus whatever the
        // postcondition mentions
        Mentions allowed;
        Interp beforeView = work;
        beforeView.state = before;
        for (const auto& r : s.frame.regs) {
            Value v = evalExpr(*r, beforeView, sc);
            if (v.is<RegId>()) allowed.regs.insert(v.as<RegId>().id);
        }
        for (const auto& mref : s.frame.memRefs) {
            Value v = evalExpr(*mref, beforeView, sc);
            if (v.is<Pointer>()) {
                const auto& ptr = v.as<Pointer>();
                allowed.cells.insert(MemKey{ptr.region, ptr.offset});
            }
        }
        collectMentions(*s.post, beforeView, sc, allowed);

        for (const auto& [id, v] : work.state.regs) {
            if (allowed.regs.count(id)) continue;
            if (!(before.regs.at(id) == v)) {
                verdict.pass = false;
                verdict.reason = FailReason::FrameRegViolated;
                verdict.counterState = beforeText;
                auto nit = work.state.regNames.find(id);
                verdict.detail = "register '" +
                                 (nit == work.state.regNames.end()
                                      ? std::to_string(id)
                                      : nit->second) +
                                 "' changed outside the frame";
                return verdict;
            }
        }
        for (const auto& [key, v] : work.state.mem) {
            if (allowed.cells.count(key)) continue;
            if (!(before.mem.at(key) == v)) {
                verdict.pass = false;
                verdict.reason = FailReason::FrameMemViolated;
                verdict.counterState = beforeText;
                verdict.detail = "cell " + key.region + "[" +
                                 std::to_string(key.offset) +
                                 "] changed outside the frame";
                return verdict;
            }
        }
    }

    if (verdict.statesChecked == 0) {
        verdict.pass = false;
        verdict.reason = FailReason::PreUnsatNever;
        verdict.detail = "precondition held in no enumerated state";
        return verdict;
    }

    verdict.pass = true;
    verdict.reason = FailReason::None;
    return verdict;
}

} // namespace casp
