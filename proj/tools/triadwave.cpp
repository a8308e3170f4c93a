#include "commands.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Spectral solver and certification tool for triad-kernel wave equations"};
    app.set_version_flag("--version", std::string(TRIAD_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads for the right-hand side (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);

    triadwave::RunOptions run;
    CLI::App* runCmd = app.add_subcommand("run", "Integrate a configured initial value problem");
    runCmd->add_option("--config", run.config, "Run configuration (JSON)")->required();
    runCmd->add_option("--out", run.out, "Output directory")->capture_default_str();

    triadwave::VerifyOptions verify;
    CLI::App* verifyCmd = app.add_subcommand("verify-kernel", "Certify kernel symmetries and growth bound");
    verifyCmd->add_option("--config", verify.config, "Configuration holding a kernel block");
    verifyCmd->add_option("--kernel", verify.kernel, "Builtin kernel name");
    verifyCmd->add_option("--param", verify.params, "Kernel parameter key=value");
    verifyCmd->add_option("--R", verify.R, "Wavenumber range")->capture_default_str();
    verifyCmd->add_flag("--full-lattice", verify.fullLattice, "Check the bound off the k+m+n=0 plane too");

    triadwave::ConstantsOptions constants;
    CLI::App* constantsCmd = app.add_subcommand("constants", "Print the estimate constants");
    constantsCmd->add_option("--s", constants.s, "Sobolev exponent")->capture_default_str();
    constantsCmd->add_option("--lambda", constants.lambda, "Weight exponent")->capture_default_str();
    constantsCmd->add_option("--kernel", constants.kernel, "Builtin kernel name");
    constantsCmd->add_option("--param", constants.params, "Kernel parameter key=value");
    constantsCmd->add_option("--config", constants.config, "Configuration holding a kernel block");

    triadwave::ConvergenceOptions convergence;
    CLI::App* convergenceCmd = app.add_subcommand("convergence", "Self-convergence in N and dt");
    convergenceCmd->add_option("--config", convergence.config, "Run configuration (JSON)")->required();
    convergenceCmd->add_option("--out", convergence.out, "Output directory");
    convergenceCmd->add_option("--N-list", convergence.Ns, "Truncations")->delimiter(',');
    convergenceCmd->add_option("--dt-list", convergence.dts, "Time steps")->delimiter(',');

    triadwave::OracleOptions oracle;
    CLI::App* oracleCmd = app.add_subcommand("oracle-compare", "Compare against independent reference solvers");
    oracleCmd->add_option("--config", oracle.config, "Run configuration (JSON)")->required();
    oracleCmd->add_option("--out", oracle.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return triadwave::kInvalidInput;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*runCmd) return triadwave::cmdRun(run, std::cout, std::cerr);
        if (*verifyCmd) return triadwave::cmdVerifyKernel(verify, std::cout, std::cerr);
        if (*constantsCmd) return triadwave::cmdConstants(constants, std::cout, std::cerr);
        if (*convergenceCmd) return triadwave::cmdConvergence(convergence, std::cout, std::cerr);
        if (*oracleCmd) return triadwave::cmdOracleCompare(oracle, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
