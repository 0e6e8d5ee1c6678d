#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tmoyal/ast.hpp"
#include "tmoyal/checks.hpp"
#include "tmoyal/errors.hpp"

namespace {

using namespace tmoyal;

struct CliOptions {
    std::string config_path;
    std::optional<int> theta_order;
    std::optional<int> omega_order;
    std::string method;
    std::optional<int> trials;
    std::uint64_t seed = 0;
    std::string format = "text";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CheckRequest build_request(const CliOptions& o) {
    CheckRequest rq;
    if (!o.config_path.empty()) rq.config = config_from_json_text(read_file(o.config_path));
    rq.theta_order = o.theta_order;
    rq.omega_order = o.omega_order;
    if (o.method == "series") rq.method = StarMethod::series;
    if (o.method == "closed") rq.method = StarMethod::closed;
    rq.trials = o.trials;
    rq.seed = o.seed;
    return rq;
}

TwistConfig effective_config(const CliOptions& o) {
    TwistConfig cfg = o.config_path.empty() ? TwistConfig::antisym({})
                                            : config_from_json_text(read_file(o.config_path));
    if (o.theta_order) cfg.orders.theta = *o.theta_order;
    if (o.omega_order) cfg.orders.omega = *o.omega_order;
    cfg.validate();
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"exact truncated star products over a coordinate-linear frame"};
    app.require_subcommand(1);

    CliOptions o;
    app.add_option("--config", o.config_path, "JSON config file");
    app.add_option("--theta-order", o.theta_order, "deformation truncation order");
    app.add_option("--omega-order", o.omega_order, "twist truncation order");
    app.add_option("--method", o.method, "star evaluation method")
        ->check(CLI::IsMember({"series", "closed"}));
    app.add_option("--trials", o.trials, "number of randomized trials");
    app.add_option("--seed", o.seed, "base seed for randomized trials");
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string expr_a;
    std::string expr_b;
    std::string expr_one;
    std::string check_name;
    bool all = false;

    CLI::App* star_cmd = app.add_subcommand("star", "star-multiply two expressions");
    star_cmd->add_option("a", expr_a, "left expression")->required();
    star_cmd->add_option("b", expr_b, "right expression")->required();
    star_cmd->fallthrough();

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
    eval_cmd->add_option("expr", expr_one, "expression")->required();
    eval_cmd->fallthrough();

    CLI::App* check_cmd = app.add_subcommand("check", "run a named identity check");
    check_cmd->add_option("name", check_name, "check name");
    check_cmd->add_flag("--all", all, "run every check");
    check_cmd->fallthrough();

    CLI::App* report_cmd =
        app.add_subcommand("report", "run every check and print the JSON reports");
    report_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    StarMethod m = o.method == "series" ? StarMethod::series : StarMethod::closed;

    if (star_cmd->parsed()) {
        Geometry g = build_geometry(effective_config(o));
        Value va = eval_expression(parse_expression(expr_a), g, m);
        Value vb = eval_expression(parse_expression(expr_b), g, m);
        std::cout << value_str(value_star(g, va, vb, m)) << "\n";
        return 0;
    }
    if (eval_cmd->parsed()) {
        Geometry g = build_geometry(effective_config(o));
        std::cout << value_str(eval_expression(parse_expression(expr_one), g, m)) << "\n";
        return 0;
    }
    if (check_cmd->parsed()) {
        if (all == !check_name.empty()) {
            std::cerr << "check requires exactly one of a check name or --all\n";
            return 2;
        }
        CheckRequest rq = build_request(o);
        if (all) {
            std::vector<CheckReport> reps = run_all_checks(rq);
            bool ok = true;
            if (o.format == "json") std::cout << reports_json_text(reps) << "\n";
            for (const CheckReport& rep : reps) {
                if (o.format != "json") std::cout << report_line(rep) << "\n";
                ok = ok && rep.residual_zero;
            }
            return ok ? 0 : 1;
        }
        CheckReport rep = run_check(check_name, rq);
        if (o.format == "json")
            std::cout << report_json_text(rep) << "\n";
        else
            std::cout << report_line(rep) << "\n";
        return rep.residual_zero ? 0 : 1;
    }
    if (report_cmd->parsed()) {
        CheckRequest rq = build_request(o);
        std::vector<CheckReport> reps = run_all_checks(rq);
        std::cout << reports_json_text(reps) << "\n";
        for (const CheckReport& rep : reps)
            if (!rep.residual_zero) return 1;
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tmoyal::ParseError& e) {
        std::cerr << "parse error " << e.what() << "\n";
        return 2;
    } catch (const tmoyal::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tmoyal::CheckNameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
