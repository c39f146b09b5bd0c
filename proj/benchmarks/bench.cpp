#include <benchmark/benchmark.h>
#include <casp/parser.hpp>
#include <casp/interp.hpp>
#include <casp/verify.hpp>

using namespace casp;

static const char* kMachine = R"(
let wordsize : int = 4;;
letstate r1 : 4 bit loc;;
letstate r2 : 4 bit loc;;
defop XOR [a: 4 bit loc, b: 4 bit loc] {
  txt = format("xor $1, $2", a.txt, b.txt),
  sem = *a <- *a bxor *b
};;
)";

static const char* kSpec = R"(
let old1 : 4 bit = *r1;;
let old2 : 4 bit = *r2;;
reg-modify: r1, r2;;
pre: true;;
post: *r1 == old2 && *r2 == old1;;
)";

static void BM_EvalExpr(benchmark::State& st) {
  auto e = parseExpr("(0b1010 b+ 0b0101) bxor (0b1100 b* 0b0011)");
  Interp in;
  Scope sc;
  for (auto _ : st) benchmark::DoNotOptimize(evalExpr(*e, in, sc));
}
BENCHMARK(BM_EvalExpr);

static void BM_VerifyExhaustive(benchmark::State& st) {
  auto m = parseMachine(kMachine);
  auto spec = parseSpec(kSpec);
  auto prog = parseProgram("XOR r1 r2\nXOR r2 r1\nXOR r1 r2");
  for (auto _ : st) {
    VerifyOptions opt;
    benchmark::DoNotOptimize(verify(m, spec, prog, opt));
  }
}
BENCHMARK(BM_VerifyExhaustive);

BENCHMARK_MAIN();
