// orderable_slopes: Riley root traces, slope sweeps and slope certificates
// for the double twist knots C(2m, 2n), C(2m, -2n) and C(2m+1, -2n).

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "orderable/cli.hpp"

int main(int argc, char** argv) {
    using namespace orderable;
    CLI::App app{"Slopes of hyperbolic SL(2,R) representations of double twist knots"};
    app.set_version_flag("--version", std::string(kArtifactName) + " " + kArtifactVersion);

    RunConfig cfg;
    std::string command;
    std::string format;
    double y = 0.0, y_min = 0.0;
    int branch = 0;

    const std::map<std::string, Command> commands{
        {"roots", Command::Roots},       {"sweep", Command::Sweep},
        {"certify", Command::Certify},   {"check-rep", Command::CheckRep},
        {"asymptotics", Command::Asymptotics}, {"plot", Command::Plot},
    };
    app.add_option("command", command, "roots | sweep | certify | check-rep | asymptotics | plot")
        ->required()
        ->check(CLI::IsMember(commands));
    app.add_option("knot", cfg.knot, "Conway notation, e.g. C(3,-4)")->required();
    auto* y_opt = app.add_option("--y", y, "single trace value y (roots, check-rep)");
    auto* ymin_opt = app.add_option("--y-min", y_min, "sweep start (default: left endpoint + 1e-8)");
    app.add_option("--y-max", cfg.y_max, "sweep end")->capture_default_str();
    app.add_option("--samples", cfg.samples, "grid points before refinement")->capture_default_str();
    app.add_option("--tol", cfg.tol, "root residual tolerance")->capture_default_str();
    auto* fmt_opt =
        app.add_option("--format", format, "csv | json | svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    app.add_option("--out", cfg.out_path, "output file (default: stdout)");
    auto* branch_opt = app.add_option("--branch", branch, "branch index j (default: all swept branches)");
    app.add_option("--q-max", cfg.q_max, "largest witness denominator")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.command = commands.at(command);
    if (*y_opt) cfg.y = y;
    if (*ymin_opt) cfg.y_min = y_min;
    if (*fmt_opt) cfg.format = parse_format(format);
    if (*branch_opt) cfg.branch = branch;
    return run(cfg, std::cout, std::cerr);
}
