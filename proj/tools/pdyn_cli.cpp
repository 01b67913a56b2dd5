#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <padic_dynamo/padic_dynamo.hpp>
#include <padic_dynamo/reports.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDeskScale = 3;
constexpr int kExitCertificate = 4;

pdyn::Rat parse_rat(const std::string& s) {
    try {
        return pdyn::Rat(s);
    } catch (const std::exception&) {
        throw CLI::ValidationError("not an exact rational: " + s);
    }
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << j.dump(2) << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        os << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace pdyn;

    CLI::App app{"padic-dynamo: exact p-adic arithmetic-dynamics pipelines"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand name

    std::string out_path;
    bool as_csv = false;
    bool as_json = true;
    app.add_option("-o,--output", out_path, "write the report to a file");
    app.add_flag("--csv", as_csv, "CSV output where supported");
    app.add_flag("--json", as_json, "JSON output (default)");

    // shared knobs
    std::string p_str = "2", c_str = "0", center_str = "0", radius_str = "0";
    std::string coeffs_str, lambda_str = "2", a_str = "0", torsion = "O";
    long d = 2;
    std::size_t n = 1, m = 0;
    bool open_disk = false, closed_disk = false;
    unsigned long max_n = 6, precision = 12;

    auto* gleason = app.add_subcommand("gleason", "Gleason polynomial g_n and disk counts");
    gleason->add_option("--p", p_str)->required();
    gleason->add_option("--n", n)->required()->check(CLI::Range(std::size_t(1), std::size_t(12)));
    gleason->add_option("--center", center_str);
    gleason->add_option("--radius-exp", radius_str);
    gleason->add_flag("--open", open_disk);
    gleason->add_flag("--closed", closed_disk);

    auto* mis = app.add_subcommand("misiurewicz", "relation polynomial G_{m,n} and disk counts");
    mis->add_option("--d", d);
    mis->add_option("--p", p_str)->required();
    mis->add_option("--m", m)->required();
    mis->add_option("--n", n)->required();
    mis->add_option("--center", center_str);
    mis->add_option("--radius-exp", radius_str);
    mis->add_flag("--open", open_disk);
    mis->add_flag("--closed", closed_disk);

    auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial");
    newton->add_option("--p", p_str)->required();
    newton->add_option("--coeffs", coeffs_str, "comma-separated a_0,a_1,...")->required();
    newton->add_option("--center", center_str);

    auto* ex72 = app.add_subcommand("ex72", "the h_n(b) pipeline");
    ex72->add_option("--n", n)->required();

    auto* ex73 = app.add_subcommand("ex73", "ramification-portrait identities");
    ex73->add_option("--p", p_str)->required();

    auto* lattes = app.add_subcommand("lattes", "flexible Lattes map and Milnor criterion");
    lattes->add_option("--lambda", lambda_str)->required();
    lattes->add_option("--m", d)->default_val(2);
    lattes->add_option("--torsion", torsion, "O | 0 | 1 | lambda");

    auto* verdict = app.add_subcommand("verdict", "per-parameter certificate chain");
    verdict->add_option("--p", p_str)->required();
    verdict->add_option("--d", d)->required();
    verdict->add_option("--c", c_str)->required();
    verdict->add_option("--max-n", max_n);
    verdict->add_option("--precision", precision);

    auto* stability = app.add_subcommand("stability", "residue stability certificate");
    stability->add_option("--p", p_str)->required();
    stability->add_option("--d", d)->required();
    stability->add_option("--a", a_str)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    try {
        BigInt p(p_str);
        LogRadius radius = closed_disk ? LogRadius::closed_disk(parse_rat(radius_str))
                                       : LogRadius::open_disk(parse_rat(radius_str));
        if (gleason->parsed()) {
            if (as_csv) {
                emit_text(polygon_csv(gleason_factor(n).shift(parse_rat(center_str)), p),
                          out_path);
            } else {
                emit(reports::gleason_report(p, n, parse_rat(center_str), radius), out_path);
            }
        } else if (mis->parsed()) {
            emit(reports::misiurewicz_report(d, m, n, p, parse_rat(center_str), radius),
                 out_path);
        } else if (newton->parsed()) {
            std::vector<Rat> coeffs;
            std::stringstream ss(coeffs_str);
            std::string item;
            while (std::getline(ss, item, ',')) coeffs.push_back(parse_rat(item));
            Poly f(std::move(coeffs));
            if (as_csv)
                emit_text(polygon_csv(f.shift(parse_rat(center_str)), p), out_path);
            else
                emit(reports::newton_report(f, p, parse_rat(center_str)), out_path);
        } else if (ex72->parsed()) {
            emit(reports::ex72_report_json(n), out_path);
        } else if (ex73->parsed()) {
            emit(reports::ex73_report_json(p), out_path);
        } else if (lattes->parsed()) {
            TorsionMarker t = TorsionMarker::O;
            if (torsion == "0") t = TorsionMarker::T0;
            else if (torsion == "1") t = TorsionMarker::T1;
            else if (torsion == "lambda") t = TorsionMarker::TLambda;
            else if (torsion != "O") throw std::invalid_argument("bad --torsion");
            LattesSpec spec{LegendreCurve(parse_rat(lambda_str)), d, t, Mobius::identity()};
            emit(reports::lattes_report(spec), out_path);
        } else if (verdict->parsed()) {
            std::vector<unsigned long> schedule;
            for (unsigned long i = 1; i <= max_n; ++i) schedule.push_back(i);
            emit(reports::verdict_report_json(
                     parameter_verdict(d, p, parse_rat(c_str), schedule, precision)),
                 out_path);
        } else if (stability->parsed()) {
            emit(reports::stability_report(UnicriticalFamily(d, p, parse_rat(a_str))),
                 out_path);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "desk-scale cap: " << e.what() << "\n";
        return kExitDeskScale;
    } catch (const UnsupportedM& e) {
        std::cerr << "desk-scale cap: " << e.what() << "\n";
        return kExitDeskScale;
    } catch (const CertificateFailure& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
