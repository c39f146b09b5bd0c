#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "casp/interp.hpp"
#include "casp/lower.hpp"
#include "casp/parser.hpp"
#include "casp/pretty.hpp"
#include "casp/stateio.hpp"
#include "casp/typecheck.hpp"
#include "casp/verify.hpp"

namespace {

// Exit codes: 0 success / verdict PASS, 1 verdict FAIL or failed lowering,
// 2 usage, parse, or type errors.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

// The file currently being processed, for diagnostic rendering.
std::string g_file = "<input>";

struct WithFile {
    std::string saved;
    int exceptions;
    explicit WithFile(std::string f)
        : saved(std::move(g_file)), exceptions(std::uncaught_exceptions()) {
        g_file = std::move(f);
    }
    // keep the name in place while a diagnostic unwinds toward main
    ~WithFile() {
        if (std::uncaught_exceptions() == exceptions) g_file = saved;
    }
};

// Lowering failures exit 1 (the spec cannot be expressed on this machine);
// everything else wrong with the input exits 2.
bool isLoweringFailure(const casp::Diag& d) {
    const std::string& c = d.code();
    return c == "LoweringFailed" || c == "RequireUnmet" ||
           c == "CircularReference" || c == "QuantifierOverNonLiteralSet" ||
           c == "QuantifierDisabled" || c == "UnknownBlock";
}

casp::Machine loadMachine(const std::string& path) {
    WithFile wf(path);
    return casp::parseMachineFile(path);
}

casp::Spec loadSpec(const std::string& path) {
    WithFile wf(path);
    return casp::parseSpecFile(path);
}

casp::Program loadProgram(const std::string& path) {
    WithFile wf(path);
    return casp::parseProgramFile(path);
}

int cmdCheck(const std::string& machinePath, const std::string& specPath,
             const std::string& programPath) {
    casp::Machine m = loadMachine(machinePath);
    casp::TypeEnvs envs;
    {
        WithFile wf(machinePath);
        envs = casp::typeMachine(m);
    }
    if (!specPath.empty()) {
        casp::Spec s = loadSpec(specPath);
        WithFile wf(specPath);
        casp::typeSpec(s, envs);
    }
    if (!programPath.empty()) {
        casp::Program p = loadProgram(programPath);
        WithFile wf(programPath);
        casp::typeProgram(p, envs);
    }
    std::cout << "OK\n";
    return kOk;
}

int cmdRun(const std::string& machinePath, const std::string& programPath,
           const std::string& initPath) {
    casp::Machine m = loadMachine(machinePath);
    casp::Program p = loadProgram(programPath);
    {
        WithFile wf(machinePath);
        casp::TypeEnvs envs = casp::typeMachine(m);
        WithFile wf2(programPath);
        casp::typeProgram(p, envs);
    }
    casp::Interp I;
    {
        WithFile wf(machinePath);
        I.addDecls(m.decls);
    }
    if (!initPath.empty()) {
        WithFile wf(initPath);
        casp::applyStateFile(initPath, I);
    }
    casp::Outcome out;
    {
        WithFile wf(programPath);
        out = casp::runProgram(p, I);
    }
    if (out == casp::Outcome::Crash) {
        std::cout << "CRASH\n";
        return kFail;
    }
    std::cout << casp::renderState(I);
    return kOk;
}

int cmdVerify(const std::string& machinePath, const std::string& specPath,
              const std::string& programPath, const casp::VerifyOptions& opt) {
    casp::Machine m = loadMachine(machinePath);
    casp::Spec s = loadSpec(specPath);
    casp::Program p = loadProgram(programPath);
    {
        WithFile wf(machinePath);
        casp::TypeEnvs envs = casp::typeMachine(m);
        {
            WithFile wf2(specPath);
            casp::typeSpec(s, envs);
        }
        WithFile wf3(programPath);
        casp::typeProgram(p, envs);
    }
    WithFile wf(specPath);
    casp::Verdict v = casp::verify(m, s, p, opt);
    std::cout << v.render();
    if (!v.pass) return kFail;
    return kOk;
}

int cmdLower(const std::string& machinePath, const std::string& mapPath,
             const std::string& alePath, const std::string& outPath,
             const casp::LowerOptions& opt) {
    casp::Machine m = loadMachine(machinePath);
    casp::MapFile maps;
    {
        WithFile wf(mapPath);
        maps = casp::parseMapFileAt(mapPath);
    }
    casp::AleSpec ale;
    {
        WithFile wf(alePath);
        ale = casp::parseAleSpecFile(alePath);
    }
    WithFile wf(alePath);
    casp::LowerResult res = casp::lowerSpec(m, maps, ale, opt);
    for (const auto& line : res.trace) std::cerr << line << "\n";
    std::string text = casp::pretty(res.spec);
    if (outPath.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) throw casp::Diag("IOError", "cannot write '" + outPath + "'");
        out << text;
    }
    return kOk;
}

int cmdExtract(const std::string& machinePath, const std::string& programPath) {
    casp::Machine m = loadMachine(machinePath);
    casp::Program p = loadProgram(programPath);
    {
        WithFile wf(machinePath);
        casp::TypeEnvs envs = casp::typeMachine(m);
        WithFile wf2(programPath);
        casp::typeProgram(p, envs);
    }
    casp::Interp I;
    {
        WithFile wf(machinePath);
        I.addDecls(m.decls);
    }
    WithFile wf(programPath);
    casp::Value t = casp::extractText(p, I);
    if (!t.is<std::string>()) {
        std::cerr << g_file << ":0:0: TextExtractionFailed: "
                  << "a txt clause failed to evaluate\n";
        return kFail;
    }
    std::cout << t.as<std::string>();
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"machine-description toolchain"};
    app.require_subcommand(1);

    std::string machinePath, specPath, programPath, initPath, mapPath, alePath,
        outPath;

    auto* check = app.add_subcommand("check", "parse and typecheck inputs");
    check->add_option("machine", machinePath, "machine description")->required();
    check->add_option("spec", specPath, "machine-level spec");
    check->add_option("--program", programPath, "program to check");

    auto* run = app.add_subcommand("run", "execute a program");
    run->add_option("machine", machinePath)->required();
    run->add_option("program", programPath)->required();
    run->add_option("--init", initPath, "initial machine-state file");

    casp::VerifyOptions vopt;
    bool exhaustive = false;
    long long samples = -1;
    std::vector<std::string> seedPtrs;
    auto* verify = app.add_subcommand("verify", "check a program against a spec");
    verify->add_option("machine", machinePath)->required();
    verify->add_option("spec", specPath)->required();
    verify->add_option("program", programPath)->required();
    verify->add_flag("--exhaustive", exhaustive, "enumerate every state (default)");
    verify->add_option("--samples", samples, "sample this many random states");
    verify->add_option("--seed", vopt.seed, "random seed for sampling");
    verify->add_option("--cap-bits", vopt.capBits,
                       "largest exhaustive space, in state bits");
    verify->add_option("--seed-pointer", seedPtrs,
                       "reg=region: start reg as a pointer to region");

    casp::LowerOptions lopt;
    auto* lower = app.add_subcommand("lower", "lower a spec onto a machine");
    lower->add_option("machine", machinePath)->required();
    lower->add_option("mapping", mapPath)->required();
    lower->add_option("spec", alePath)->required();
    lower->add_option("-o,--output", outPath, "write the lowered spec here");
    lower->add_flag("--allow-quantifiers,!--no-quantifiers", lopt.allowQuantifiers,
                    "expand quantifiers over literal sets (default on)");
    lower->add_flag("--emit-map-trace", lopt.emitMapTrace,
                    "report how each name was satisfied");

    auto* extract = app.add_subcommand("extract", "render a program as assembly");
    extract->add_option("machine", machinePath)->required();
    extract->add_option("program", programPath)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kError;
    }

    try {
        if (check->parsed()) return cmdCheck(machinePath, specPath, programPath);
        if (run->parsed()) return cmdRun(machinePath, programPath, initPath);
        if (verify->parsed()) {
            if (samples >= 0) {
                if (exhaustive) {
                    std::cerr << "choose either --exhaustive or --samples\n";
                    return kError;
                }
                vopt.exhaustive = false;
                vopt.samples = samples;
            } else {
                vopt.exhaustive = true;
            }
            for (const auto& sp : seedPtrs) {
                auto eq = sp.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "--seed-pointer needs reg=region\n";
                    return kError;
                }
                vopt.seedPointers.emplace_back(sp.substr(0, eq), sp.substr(eq + 1));
            }
            return cmdVerify(machinePath, specPath, programPath, vopt);
        }
        if (lower->parsed())
            return cmdLower(machinePath, mapPath, alePath, outPath, lopt);
        if (extract->parsed()) return cmdExtract(machinePath, programPath);
    } catch (const casp::Diag& d) {
        std::cerr << d.render(g_file) << "\n";
        return isLoweringFailure(d) ? kFail : kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
