// zetalaw command-line interface.
//
// Exit codes: 0 success / all checks passed, 1 checks ran but failed (or a numeric failure),
// 2 usage error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zetalaw/zetalaw.hpp"

using zetalaw::Complex;
using zetalaw::FieldId;
using json = nlohmann::ordered_json;

namespace {

enum class Format { Json, Csv, Text };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // no negative zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

// JSON number rounded to 15 significant digits; non-finite values become null.
json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    if (v == 0.0) return 0.0;
    const std::string text = num(v);
    double rounded = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
}

bool parse_decimal(std::string_view text, double& out) {
    if (text.empty()) return false;
    for (char c : text)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-'))
            return false;
    const char* first = text.data();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, text.data() + text.size(), out, std::chars_format::general);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size() && std::isfinite(out);
}

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with decimal a and b.
std::optional<Complex> parse_complex(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.back() != 'i') {
        double re = 0.0;
        return parse_decimal(text, re) ? std::optional<Complex>(Complex{re, 0.0}) : std::nullopt;
    }
    text.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    std::string_view imag_text = text;
    if (split != std::string_view::npos) {
        if (!parse_decimal(text.substr(0, split), re)) return std::nullopt;
        imag_text = text.substr(split);
    }
    double im = 0.0;
    if (imag_text.empty() || imag_text == "+") im = 1.0;
    else if (imag_text == "-") im = -1.0;
    else if (!parse_decimal(imag_text, im)) return std::nullopt;
    return Complex{re, im};
}

json report_json(const zetalaw::VerificationReport& r) {
    json params = json::array();
    for (const auto& [name, value] : r.parameters) params.push_back({{"name", name}, {"value", jnum(value)}});
    return {{"check_name", r.check_name},
            {"field", r.field ? json(std::string(zetalaw::field_name(*r.field))) : json(nullptr)},
            {"parameters", params},
            {"residual", jnum(r.residual)},
            {"tolerance", jnum(r.tolerance)},
            {"passed", r.passed}};
}

void print_reports_text(std::ostream& out, const std::vector<zetalaw::VerificationReport>& reports) {
    for (const auto& r : reports) {
        out << (r.passed ? "PASS " : "FAIL ") << r.check_name << ' '
            << (r.field ? std::string(zetalaw::field_name(*r.field)) : std::string("-")) << " residual=" << num(r.residual)
            << " tolerance=" << num(r.tolerance);
        for (const auto& [name, value] : r.parameters) out << ' ' << name << '=' << num(value);
        out << '\n';
    }
}

void print_reports_csv(std::ostream& out, const std::vector<zetalaw::VerificationReport>& reports) {
    out << "check_name,field,residual,tolerance,passed\n";
    for (const auto& r : reports) {
        out << r.check_name << ',' << (r.field ? std::string(zetalaw::field_name(*r.field)) : std::string()) << ','
            << num(r.residual) << ',' << num(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    }
}

bool all_passed(const std::vector<zetalaw::VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.passed) return false;
    return true;
}

FieldId require_field(const std::string& name) {
    if (auto id = zetalaw::parse_field(name)) return *id;
    throw UsageError("unknown field '" + name + "' (expected Q, Qi, Q2, rationals, gaussian, sqrt-minus-2)");
}

int cmd_xi(Format format, const std::string& field_name, const std::vector<std::string>& s_list) {
    const auto field = zetalaw::field_spec(require_field(field_name));
    std::vector<Complex> points;
    // Split by hand so that empty entries such as "1,,2" are rejected rather than skipped.
    for (const auto& list : s_list) {
        std::size_t start = 0;
        while (true) {
            const auto comma = list.find(',', start);
            const std::string text = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            auto s = parse_complex(text);
            if (!s) throw UsageError("cannot parse complex value '" + text + "'");
            points.push_back(*s);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    std::vector<Complex> values;
    for (auto s : points) values.push_back(zetalaw::xi(field, s));

    if (format == Format::Json) {
        json rows = json::array();
        for (std::size_t i = 0; i < points.size(); ++i)
            rows.push_back({{"s_re", jnum(points[i].real())}, {"s_im", jnum(points[i].imag())},
                            {"xi_re", jnum(values[i].real())}, {"xi_im", jnum(values[i].imag())}});
        std::cout << json{{"command", "xi"}, {"field", zetalaw::field_name(field.id)}, {"rows", rows}}.dump(2) << '\n';
    } else if (format == Format::Csv) {
        std::cout << "s_re,s_im,xi_re,xi_im\n";
        for (std::size_t i = 0; i < points.size(); ++i)
            std::cout << num(points[i].real()) << ',' << num(points[i].imag()) << ',' << num(values[i].real()) << ','
                      << num(values[i].imag()) << '\n';
    } else {
        for (std::size_t i = 0; i < points.size(); ++i)
            std::cout << "xi(" << num(points[i].real()) << (points[i].imag() < 0 ? "" : "+") << num(points[i].imag())
                      << "i) = " << num(values[i].real()) << (values[i].imag() < 0 ? " - " : " + ")
                      << num(std::abs(values[i].imag())) << "i\n";
    }
    return 0;
}

int cmd_density(Format format, const std::string& field_name, double t_min, double t_max, int points) {
    const auto id = require_field(field_name);
    if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) throw UsageError("need 0 < t-min < t-max");
    if (points < 2) throw UsageError("need at least 2 points");
    const zetalaw::DensityModel model(id);
    const auto values = zetalaw::parallel_map(std::size_t(points), [&](std::size_t i) {
        const double t = i + 1 == std::size_t(points) ? t_max : t_min + (t_max - t_min) * double(i) / (points - 1);
        return std::make_pair(t, model(t));
    });
    if (format == Format::Json) {
        json rows = json::array();
        for (const auto& [t, psi] : values) rows.push_back({{"t", jnum(t)}, {"psi", jnum(psi)}});
        std::cout << json{{"command", "density"}, {"field", zetalaw::field_name(id)}, {"rows", rows}}.dump(2) << '\n';
    } else {
        if (format == Format::Csv) std::cout << "t,psi\n";
        for (const auto& [t, psi] : values) std::cout << num(t) << (format == Format::Csv ? "," : " ") << num(psi) << '\n';
    }
    return 0;
}

int cmd_check(Format format, const std::string& suite, std::optional<double> tolerance) {
    const auto& names = zetalaw::suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        throw UsageError("unknown suite '" + suite + "'");
    }
    const auto reports = zetalaw::run_suite(suite, tolerance);
    if (format == Format::Json) {
        json out = json::array();
        for (const auto& r : reports) out.push_back(report_json(r));
        std::cout << out.dump(2) << '\n';
    } else if (format == Format::Csv) {
        print_reports_csv(std::cout, reports);
    } else {
        print_reports_text(std::cout, reports);
    }
    return all_passed(reports) ? 0 : 1;
}

int cmd_li(Format format, const std::string& field_name, int n_max) {
    if (n_max < 1 || n_max > 8) throw UsageError("n-max must be between 1 and 8");
    const auto field = zetalaw::field_spec(require_field(field_name));
    const auto rows = zetalaw::li_reports(field, n_max);
    const auto checks = zetalaw::check_proposition(field);
    if (format == Format::Json) {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"n", r.n},
                             {"lambda_contour", jnum(r.lambda_contour)},
                             {"lambda_probabilistic", r.lambda_probabilistic ? jnum(*r.lambda_probabilistic) : json(nullptr)},
                             {"agreement", jnum(r.agreement)},
                             {"positive", r.positive}});
        json jchecks = json::array();
        for (const auto& c : checks) jchecks.push_back(report_json(c));
        std::cout << json{{"command", "li"}, {"field", zetalaw::field_name(field.id)}, {"rows", jrows}, {"checks", jchecks}}.dump(2)
                  << '\n';
    } else if (format == Format::Csv) {
        std::cout << "n,lambda_contour,lambda_probabilistic,agreement,positive\n";
        for (const auto& r : rows)
            std::cout << r.n << ',' << num(r.lambda_contour) << ','
                      << (r.lambda_probabilistic ? num(*r.lambda_probabilistic) : std::string()) << ',' << num(r.agreement)
                      << ',' << (r.positive ? "true" : "false") << '\n';
        print_reports_csv(std::cerr, checks);
    } else {
        for (const auto& r : rows) {
            std::cout << "lambda_" << r.n << " = " << num(r.lambda_contour);
            if (r.lambda_probabilistic)
                std::cout << "  (cumulant route " << num(*r.lambda_probabilistic) << ", difference " << num(r.agreement) << ")";
            std::cout << '\n';
        }
        print_reports_text(std::cout, checks);
    }
    return all_passed(checks) ? 0 : 1;
}

int cmd_sample(Format format, const std::string& field_name, long long count, std::uint64_t seed, int table_size) {
    if (count < 1) throw UsageError("count must be positive");
    if (table_size < 64) throw UsageError("table-size must be at least 64");
    const auto id = require_field(field_name);
    const zetalaw::DensityModel model(id);
    auto state = zetalaw::build_sampler(model, table_size, seed);
    const auto xs = zetalaw::sample(state, std::size_t(count));

    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / double(xs.size() - 1) : 0.0;
    const double ks = zetalaw::ks_statistic(model, xs);
    const auto field = zetalaw::field_spec(id);
    json summary{{"field", zetalaw::field_name(id)},
                 {"count", count},
                 {"seed", seed},
                 {"mean", jnum(mean)},
                 {"variance", jnum(var)},
                 {"expected_mean", jnum(1.0 / field.sqrt_abs_disc())},
                 {"ks_statistic", jnum(ks)},
                 {"ks_threshold", jnum(1.95 / std::sqrt(double(count)))}};

    if (format == Format::Json) {
        json samples = json::array();
        for (double x : xs) samples.push_back(jnum(x));
        std::cout << json{{"command", "sample"}, {"summary", summary}, {"samples", samples}}.dump(2) << '\n';
    } else if (format == Format::Csv) {
        std::cout << "x\n";
        for (double x : xs) std::cout << num(x) << '\n';
        std::cerr << summary.dump() << '\n';
    } else {
        for (double x : xs) std::cout << num(x) << '\n';
        for (const auto& [key, value] : summary.items())
            std::cout << "# " << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Completed Dedekind xi functions of Q, Q(i), Q(sqrt(-2)) and the probability laws they define"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    std::string field = "Q";
    std::vector<std::string> s_list;
    auto* xi_cmd = app.add_subcommand("xi", "Evaluate xi_K at complex points");
    xi_cmd->add_option("--field", field, "Q, Qi, Q2 (or rationals, gaussian, sqrt-minus-2)")->capture_default_str();
    xi_cmd->add_option("--s", s_list, "Comma-separated complex values such as 0.5, 2-3i, i")->required();

    double t_min = 0.0;
    double t_max = 0.0;
    int points = 100;
    auto* density_cmd = app.add_subcommand("density", "Tabulate the density psi_K on a uniform grid");
    density_cmd->add_option("--field", field)->capture_default_str();
    density_cmd->add_option("--t-min", t_min)->required();
    density_cmd->add_option("--t-max", t_max)->required();
    density_cmd->add_option("--points", points)->capture_default_str();

    std::string suite;
    std::optional<double> tolerance;
    auto* check_cmd = app.add_subcommand("check", "Run verification suites");
    check_cmd->add_option("suite", suite, "local-zeta, poisson, positivity, functional-equation, mellin, or all")->required();
    check_cmd->add_option("--tolerance", tolerance, "Replace every report's tolerance")->check(CLI::PositiveNumber);

    int n_max = 2;
    auto* li_cmd = app.add_subcommand("li", "Li coefficients by contour and cumulant routes");
    li_cmd->add_option("--field", field)->capture_default_str();
    li_cmd->add_option("--n-max", n_max)->capture_default_str();

    long long count = 1000;
    std::uint64_t seed = 42;
    int table_size = 1024;
    auto* sample_cmd = app.add_subcommand("sample", "Draw samples of X by inverse-CDF transform");
    sample_cmd->add_option("--field", field)->capture_default_str();
    sample_cmd->add_option("--count", count)->capture_default_str();
    sample_cmd->add_option("--seed", seed)->capture_default_str();
    sample_cmd->add_option("--table-size", table_size)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    const Format format = format_name == "json" ? Format::Json : format_name == "csv" ? Format::Csv : Format::Text;
    try {
        if (*xi_cmd) return cmd_xi(format, field, s_list);
        if (*density_cmd) return cmd_density(format, field, t_min, t_max, points);
        if (*check_cmd) return cmd_check(format, suite, tolerance);
        if (*li_cmd) return cmd_li(format, field, n_max);
        if (*sample_cmd) return cmd_sample(format, field, count, seed, table_size);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
