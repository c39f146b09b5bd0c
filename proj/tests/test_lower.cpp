#include <doctest.h>

#include <casp/interp.hpp>
#include <casp/lower.hpp>
#include <casp/parser.hpp>
#include <casp/pretty.hpp>
#include <casp/typecheck.hpp>
#include <casp/verify.hpp>

#include "gen.hpp"

using namespace casp;

namespace {

std::string sample(const char* name) {
    return std::string(SAMPLES_DIR) + "/" + name;
}

const char* kAleSwap = R"(
require value wordsize : int;;
require value rA : loc;;
require value rB : loc;;
block swap {
  let old1 : word = *rA;;
  let old2 : word = *rB;;
  reg-modify: rA, rB;;
  pre: true;;
  post: *rA == old2 && *rB == old1;;
}
)";

const char* kToyMap = R"(
module swap {
  let rA : 2 bit loc = r1;;
  let rB : 2 bit loc = r2;;
}
)";

} // namespace

TEST_CASE("constant extraction is the literal-int projection of evaluation") {
    gen::Rng g(808);
    for (int iter = 0; iter < 200; ++iter) {
        // a state-reference-free declaration list with unique names
        std::vector<DeclPtr> decls;
        std::map<std::string, long long> expected;
        long long n = g.range(1, 12);
        for (long long i = 0; i < n; ++i) {
            std::string name = "c" + std::to_string(i);
            switch (g.below(5)) {
            case 0: {  // the extractable shape
                long long v = g.range(0, 1000);
                decls.push_back(mkDecl(dc::Let{name, tInt(), gen::litInt(v)}));
                expected[name] = v;
                break;
            }
            case 1:  // int-typed but computed: evaluates, is not extracted
                decls.push_back(mkDecl(dc::Let{
                    name, tInt(),
                    mkExpr(ex::Binop{BinOp::Add, gen::litInt(g.range(0, 9)),
                                     gen::litInt(g.range(0, 9))})}));
                break;
            case 2:
                decls.push_back(mkDecl(
                    dc::Let{name, tBool(), mkExpr(ex::Lit{Value::ofBool(g.coin())})}));
                break;
            case 3:
                decls.push_back(mkDecl(dc::Let{name, tBV(4), gen::litBV(4, g.below(16))}));
                break;
            default:
                decls.push_back(mkDecl(
                    dc::Let{name, tString(), mkExpr(ex::Lit{Value::ofString("s")})}));
            }
        }

        auto got = extractConstants(decls);

        // oracle: evaluate the whole list, then keep exactly the bindings
        // whose declaration was a literal-int let
        Interp I;
        I.addDecls(decls);
        CHECK(got == expected);
        for (const auto& [name, v] : got) {
            const Env::Binding* b = I.env.lookup(name);
            REQUIRE(b);
            CHECK(std::get<Value>(*b) == Value::ofInt(Int(v)));
        }
    }
}

TEST_CASE("type lowering") {
    std::map<std::string, long long> consts{{"wordsize", 2}, {"cap", 16}};
    CHECK(*lowerType(*mkAleType(aty::IntT{}), consts) == *tInt());
    CHECK(*lowerType(*mkAleType(aty::BoolT{}), consts) == *tBool());
    CHECK(*lowerType(*mkAleType(aty::VecT{symVar("wordsize")}), consts) == *tBV(2));
    CHECK(*lowerType(*mkAleType(aty::VecT{symLit(8)}), consts) == *tBV(8));
    // pointers are machine words
    CHECK(*lowerType(*mkAleType(aty::PtrT{symVar("wordsize")}), consts) == *tBV(2));
    CHECK(*lowerType(*mkAleType(aty::LocT{symVar("wordsize")}), consts) == *tLoc(2));
    CHECK(*lowerType(*mkAleType(aty::RegSetT{symLit(2)}), consts) == *tRegSet(2));
    CHECK(*lowerType(*mkAleType(aty::LabelT{symLit(2)}), consts) == *tLabel(2));
    CHECK(*lowerType(*mkAleType(aty::MemT{symLit(8), symVar("cap"), symLit(8)}),
                     consts) == *tMem(8, 16, 8));
    CHECK_THROWS_AS(lowerType(*mkAleType(aty::VecT{symVar("nosuch")}), consts), Diag);
}

TEST_CASE("the exchange spec lowers, typechecks, and verifies") {
    Machine m = parseMachine(gen::toyMachineSrc());
    LowerResult r = lowerSpec(m, parseMapFile(kToyMap), parseAleSpec(kAleSwap));

    // lowerSpec already re-typechecks; confirm independently
    TypeEnvs envs = typeMachine(m);
    CHECK_NOTHROW(typeSpec(r.spec, envs));

    Verdict v = verify(m, r.spec, parseProgram("XOR r1 r2\nXOR r2 r1\nXOR r1 r2"), {});
    CHECK(v.pass);
    CHECK(v.statesChecked == 16);
    CHECK(!verify(m, r.spec, parseProgram("NOP"), {}).pass);
}

TEST_CASE("the shipped sample files lower and typecheck") {
    Machine m = parseMachineFile(sample("toy.casp"));
    MapFile maps = parseMapFileAt(sample("toy.map"));
    AleSpec ale = parseAleSpecFile(sample("swap.ale"));
    LowerOptions opt;
    opt.emitMapTrace = true;
    LowerResult r = lowerSpec(m, maps, ale, opt);
    CHECK_NOTHROW(typeSpec(r.spec, typeMachine(m)));
    CHECK(!r.trace.empty());

    // the lowered text is itself a valid spec equal to the lowered tree
    Spec reparsed = parseSpec(pretty(r.spec));
    CHECK(reparsed == r.spec);
}

TEST_CASE("a deleted mapping binding is an unmet requirement") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile("module swap { let rA : 2 bit loc = r1;; }");
    try {
        lowerSpec(m, maps, parseAleSpec(kAleSwap));
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "RequireUnmet");
        CHECK(std::string(d.what()).find("rB") != std::string::npos);
    }
}

TEST_CASE("cyclic mapping declarations are rejected") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile(R"(
module swap {
  let rA : 2 bit loc = r1;;
  let rB : 2 bit loc = r2;;
  let c1 : int = c2 + 1;;
  let c2 : int = c1 + 1;;
}
)");
    try {
        lowerSpec(m, maps, parseAleSpec(kAleSwap));
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "CircularReference");
    }
}

TEST_CASE("the block name selects the mapping module") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile("module other { let q : int = 1;; }");
    try {
        lowerSpec(m, maps, parseAleSpec(kAleSwap));
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "UnknownBlock");
    }
}

TEST_CASE("names outside the known set do not lower") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile(kToyMap);
    AleSpec ale = parseAleSpec(
        "block swap {\npre: mystery == 1;;\npost: true;;\n}");
    try {
        lowerSpec(m, maps, ale);
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "LoweringFailed");
    }
}

TEST_CASE("quantifiers expand over literal sets and only those") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile(kToyMap);
    AleSpec ale = parseAleSpec(R"(
require value rA : loc;;
require value rB : loc;;
block swap {
  reg-modify: rA, rB;;
  pre: forall r in {rA, rB} . *r == 0b00;;
  post: exists r in {rA, rB} . *r == 0b00;;
}
)");
    LowerResult r = lowerSpec(m, maps, ale);
    // expansion substitutes each set element for the bound variable; the
    // elements still carry their mapping names
    CHECK(*r.spec.pre ==
          *parseExpr("*rA == 0b00 && *rB == 0b00"));
    CHECK(*r.spec.post ==
          *parseExpr("*rA == 0b00 || *rB == 0b00"));

    AleSpec bad = parseAleSpec(R"(
require value rs : reg set;;
block swap {
  pre: forall r in rs . *r == 0b00;;
  post: true;;
}
)");
    MapFile maps2 = parseMapFile(
        "module swap { let rs : 2 reg set = {r1, r2};; }");
    try {
        lowerSpec(m, maps2, bad);
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "QuantifierOverNonLiteralSet");
    }

    LowerOptions noq;
    noq.allowQuantifiers = false;
    try {
        lowerSpec(m, maps, ale, noq);
        FAIL("expected a diagnostic");
    } catch (const Diag& d) {
        CHECK(d.code() == "QuantifierDisabled");
    }
}

TEST_CASE("mapping frames and provides flow into the lowered spec") {
    Machine m = parseMachine(gen::toyMachineSrc());
    MapFile maps = parseMapFile(R"(
let shared : int = 2;;
module swap {
  let rA : 2 bit loc = r1;;
  let rB : 2 bit loc = r2;;
  reg-modify: rA;;
}
)");
    AleSpec ale = parseAleSpec(R"(
require value rA : loc;;
require value rB : loc;;
provide value limit : int = shared + 1;;
block swap {
  reg-modify: rB;;
  pre: limit == 3;;
  post: true;;
}
)");
    LowerResult r = lowerSpec(m, maps, ale);
    CHECK(r.spec.frame.regs.size() == 2);  // module frame plus the block's
    CHECK_NOTHROW(typeSpec(r.spec, typeMachine(m)));
}
