#include "apzeta/experiments.hpp"

#include "apzeta/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace apzeta {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    return text;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(sep, pos);
        parts.push_back(trim(text.substr(pos, next - pos)));
        if (next == std::string_view::npos) {
            return parts;
        }
        pos = next + 1;
    }
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw PreconditionError("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw PreconditionError("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

ordered_json complex_json(const Complex& z) {
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json optional_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json integer_strings(const RationalVector& v) {
    ordered_json out = ordered_json::array();
    for (const auto& q : v) {
        out.push_back(q.str());
    }
    return out;
}

// Shortest representation that round-trips.
std::string format_double(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// Writes to the file when a path is given, otherwise to the stream.
template <typename Emit>
void emit_to(const std::optional<std::filesystem::path>& path, std::ostream& fallback, Emit emit) {
    if (!path) {
        emit(fallback);
        return;
    }
    if (path->has_parent_path()) {
        std::filesystem::create_directories(path->parent_path());
    }
    std::ofstream file(*path, std::ios::trunc);
    if (!file) {
        throw PreconditionError("cannot write " + path->string());
    }
    emit(file);
    if (!file) {
        throw PreconditionError("write failed for " + path->string());
    }
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const MethodNotApplicable*>(&e)) return "MethodNotApplicable";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
    if (dynamic_cast<const EtaDenominatorNearZero*>(&e)) return "EtaDenominatorNearZero";
    if (dynamic_cast<const DenominatorNearZero*>(&e)) return "DenominatorNearZero";
    if (dynamic_cast<const PrecisionError*>(&e)) return "PrecisionError";
    if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
    if (dynamic_cast<const NumericError*>(&e)) return "NumericError";
    return "Error";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            return false;
        }
    }
    return true;
}

SuiteResult suite_fixtures(const std::filesystem::path& dir) {
    SuiteResult r{"fixtures", true, ""};
    std::ostringstream detail;
    for (const std::uint64_t m : {2, 6, 24, 60}) {
        const auto path = fixture_path(dir, m);
        if (!std::filesystem::exists(path)) {
            r.passed = false;
            detail << "m=" << m << " missing; ";
            continue;
        }
        const std::string stored = read_text_file(path);
        const std::string fresh = fixture_to_json(make_fixture(generate_representation(m)));
        if (stored != fresh) {
            r.passed = false;
            detail << "m=" << m << " differs from regenerated; ";
        }
    }
    r.detail = r.passed ? "m=2,6,24,60 byte-identical" : detail.str();
    return r;
}

SuiteResult suite_vanishing(const std::filesystem::path& dir) {
    SuiteResult r{"vanishing", true, ""};
    std::ostringstream detail;
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        return {"vanishing", false, "no fixtures in " + dir.string()};
    }
    for (const auto& path : files) {
        const auto name = path.filename().string();
        try {
            const CoefficientFixture f = fixture_from_json(read_text_file(path));
            const ProgressionModulus pm = progression_modulus(f.m);
            const bool baseline = f.m == 2 && f.a == FilterCoefficients::eta_baseline().a();
            const std::size_t order = baseline ? 1 : pm.divisor_count();
            const MomentReport report = verify_vanishing(f.b, order);
            if (!report.passed) {
                r.passed = false;
                detail << name << ": a moment below order " << order << " is nonzero; ";
                continue;
            }
            if (weight_moment(f.b, static_cast<unsigned>(order)).is_zero()) {
                r.passed = false;
                detail << name << ": moment " << order << " vanishes; ";
                continue;
            }
            representation_from_fixture(f);
        } catch (const Error& e) {
            r.passed = false;
            detail << name << ": " << e.what() << "; ";
        }
    }
    r.detail = r.passed ? std::to_string(files.size()) + " fixtures" : detail.str();
    return r;
}

SuiteResult suite_witness() {
    SuiteResult r{"witness", true, ""};
    std::size_t checked = 0;
    std::ostringstream detail;
    for (std::uint64_t m = 1; m <= 1000; ++m) {
        const ProgressionModulus pm = progression_modulus(m);
        if (pm.divisor_count() < 4) {
            continue;
        }
        const RationalVector c = singularity_witness(pm);
        if (is_zero_vector(c) || !is_zero_vector(vec_mat(c, filter_moment_matrix(pm)))) {
            r.passed = false;
            detail << "m=" << m << " ";
        }
        ++checked;
    }
    r.detail = r.passed ? std::to_string(checked) + " moduli" : "fails at " + detail.str();
    return r;
}

SuiteResult suite_determinant() {
    SuiteResult r{"determinant", true, ""};
    std::size_t checked = 0;
    std::ostringstream detail;
    for (std::uint64_t p = 2; p <= 1000; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        const Rational P(static_cast<long>(p));
        const Rational det = determinant(filter_moment_matrix(progression_modulus(p)));
        const Rational expected = P * (P - Rational(1)) / Rational(2);
        if (det.is_zero() || det != expected) {
            r.passed = false;
            detail << "p=" << p << " ";
        }
        ++checked;
        if (p * p <= 1000) {
            const Rational det2 = determinant(filter_moment_matrix(progression_modulus(p * p)));
            const Rational P2 = P * P;
            const Rational expected2 = P2 * P2 / Rational(12) * (P2 - Rational(1)) *
                                       (P2 - Rational(2) * P + Rational(1));
            if (det2.is_zero() || det2 != expected2) {
                r.passed = false;
                detail << "p^2=" << p * p << " ";
            }
            ++checked;
        }
    }
    r.detail = r.passed ? std::to_string(checked) + " moduli" : "fails at " + detail.str();
    return r;
}

SuiteResult suite_oracle() {
    SuiteResult r{"oracle", true, ""};
    std::ostringstream detail;
    const Complex points[] = {{0.5, 14.134725}, {2.0, 3.0}, {0.75, 100.0}, {1.5, 0.0}, {0.5, 1000.0}};
    for (const auto& s : points) {
        const OracleResult em = zeta_euler_maclaurin(s, 1e-12);
        const OracleResult eta = zeta_eta(s, 200000);
        if (std::abs(em.value - eta.value) > em.claimed_accuracy + eta.claimed_accuracy) {
            r.passed = false;
            detail << "s=" << s << " disagree; ";
        }
    }
    const double known[] = {std::numbers::pi * std::numbers::pi / 6.0, 1.2020569031595942854,
                            std::pow(std::numbers::pi, 4) / 90.0};
    for (int k = 0; k < 3; ++k) {
        const Complex s(2.0 + k, 0.0);
        const OracleResult em = zeta_euler_maclaurin(s, 1e-13);
        if (std::abs(em.value - known[k]) > em.claimed_accuracy + 4e-16) {
            r.passed = false;
            detail << "zeta(" << 2 + k << ") off; ";
        }
    }
    r.detail = r.passed ? "euler_maclaurin and eta_series agree" : detail.str();
    return r;
}

SuiteResult suite_continuation() {
    SuiteResult r{"continuation", true, ""};
    std::ostringstream detail;
    const Representation rep = load_or_generate(6);
    const Complex z2 = zeta_estimate(rep.filter, rep.weights, {2.0, 0.0}, 10000);
    const double e2 = std::abs(z2 - std::numbers::pi * std::numbers::pi / 6.0);
    const TruncatedEvaluation lim =
        evaluate_zeta_limit(rep.filter, rep.weights, {-1.0, 0.0}, 1000000,
                            {SummationMode::parallel, false});
    const double em1 = std::abs(lim.zeta_estimate() + 1.0 / 12.0);
    detail << "zeta(2) error " << e2 << ", zeta(-1) error " << em1;
    r.passed = e2 < 1e-10 && em1 < 1e-6;
    r.detail = detail.str();
    return r;
}

} // namespace

Complex parse_complex(std::string_view text) {
    const auto parts = split(trim(text), ',');
    if (parts.size() == 1) {
        return {parse_double(parts[0]), 0.0};
    }
    if (parts.size() != 2) {
        throw PreconditionError("expected RE,IM but got '" + std::string(text) + "'");
    }
    return {parse_double(parts[0]), parse_double(parts[1])};
}

Grid parse_grid(std::string_view text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 3) {
        throw PreconditionError("expected START:STOP:STEP but got '" + std::string(text) + "'");
    }
    return make_grid(parse_uint(parts[0]), parse_uint(parts[1]), parse_uint(parts[2]));
}

std::vector<double> parse_targets(std::string_view text) {
    std::vector<double> out;
    for (const auto part : split(trim(text), ',')) {
        const double v = parse_double(part);
        if (!(v > 0.0)) {
            throw PreconditionError("targets must be strictly positive");
        }
        if (!out.empty() && !(v < out.back())) {
            throw PreconditionError("targets must be strictly decreasing");
        }
        out.push_back(v);
    }
    return out;
}

SummationMode parse_mode(std::string_view text) {
    if (text == "seq") return SummationMode::sequential;
    if (text == "par") return SummationMode::parallel;
    throw PreconditionError("mode must be seq or par");
}

std::string csv_header() {
    return "m,t,sigma,N,target,value_re,value_im,abs_error,predicted_error,status";
}

std::string format_csv_row(const CsvRow& row) {
    std::ostringstream os;
    os << row.m << ',' << format_double(row.s.imag()) << ',' << format_double(row.s.real()) << ','
       << row.N << ',' << (row.target ? format_double(*row.target) : "") << ','
       << format_double(row.value.real()) << ',' << format_double(row.value.imag()) << ','
       << format_double(row.abs_error) << ','
       << (row.predicted_error ? format_double(*row.predicted_error) : "") << ',' << row.status;
    return os.str();
}

OracleResult oracle_for(const Complex& s, double target) {
    if (auto closed = zeta_closed_form(s)) {
        return *closed;
    }
    if (!(s.real() > 0.0)) {
        throw PreconditionError("no reference oracle covers Re(s) <= 0 away from the closed forms");
    }
    try {
        return zeta_euler_maclaurin(s, target * 1e-2);
    } catch (const PrecisionError&) {
        return zeta_euler_maclaurin(s, target);
    }
}

std::optional<double> model_error(const Representation& rep, const Complex& s, std::uint64_t N) {
    try {
        return predicted_error(rep.filter, rep.weights, s, N).predicted_error;
    } catch (const Error&) {
        return std::nullopt;
    }
}

int cmd_coeffs(const CoeffsOptions& options, std::ostream& out) {
    const Representation rep = generate_representation(options.m);
    const CoefficientFixture fixture = make_fixture(rep);
    const auto path = options.out ? *options.out : fixture_path(fixture_directory(), options.m);
    write_text_file(path, fixture_to_json(fixture));
    const FilterSystem system = filter_system(rep.filter.modulus());

    ordered_json j;
    j["command"] = "coeffs";
    j["m"] = fixture.m;
    j["divisors"] = fixture.divisors;
    j["rank"] = system.rank();
    j["nullity"] = system.nullity();
    j["a"] = integer_strings(fixture.a);
    j["b"] = integer_strings(fixture.b);
    j["vanishing_order"] = fixture.vanishing_order;
    j["source"] = fixture.source;
    j["path"] = path.string();
    out << j.dump() << '\n';
    return exit_ok;
}

int cmd_eval(const EvalCommand& options, std::ostream& out) {
    const Representation rep = load_or_generate(options.m);
    const EvalOptions eval_options{options.mode, options.explore};
    const TruncatedEvaluation ev =
        options.limit ? evaluate_zeta_limit(rep.filter, rep.weights, options.s, options.N, eval_options)
                      : evaluate_zeta(rep.filter, rep.weights, options.s, options.N, eval_options);
    const Complex value = ev.zeta_estimate();

    ordered_json j;
    j["command"] = "eval";
    j["m"] = options.m;
    j["s"] = complex_json(options.s);
    j["N"] = options.N;
    j["mode"] = options.mode == SummationMode::parallel ? "par" : "seq";
    j["zeta"] = complex_json(value);
    j["denominator_abs"] = std::abs(ev.denominator);
    j["predicted_error"] = optional_json(model_error(rep, options.s, options.N));
    try {
        const OracleResult ref = oracle_for(options.s, 1e-10);
        j["reference"] = complex_json(ref.value);
        j["reference_method"] = std::string(to_string(ref.method));
        j["reference_accuracy"] = ref.claimed_accuracy;
        j["measured_error"] = std::abs(value - ref.value);
    } catch (const PreconditionError&) {
        j["reference"] = nullptr;
        j["measured_error"] = nullptr;
    } catch (const PrecisionError&) {
        j["reference"] = nullptr;
        j["measured_error"] = nullptr;
    }
    out << j.dump() << '\n';
    return exit_ok;
}

int cmd_min_n(const MinNCommand& options, std::ostream& out) {
    if (options.targets.empty()) {
        throw PreconditionError("at least one target is required");
    }
    const Representation rep = load_or_generate(options.m);
    const Complex s(options.sigma, options.t);
    const double tightest = *std::min_element(options.targets.begin(), options.targets.end());
    const OracleResult reference = oracle_for(s, tightest / 10.0);
    const auto results =
        empirical_min_N(rep.filter, rep.weights, s, options.targets, reference, options.grid);

    bool exhausted = false;
    emit_to(options.out, out, [&](std::ostream& os) {
        os << csv_header() << '\n';
        for (std::size_t i = 0; i < results.size(); ++i) {
            const MinNResult& r = results[i];
            CsvRow row;
            row.m = options.m;
            row.s = s;
            row.N = r.N;
            row.target = options.targets[i];
            row.value = r.estimate;
            row.abs_error = r.error;
            row.predicted_error = model_error(rep, s, r.N);
            row.status = r.reached ? "ok" : "exhausted";
            exhausted = exhausted || !r.reached;
            os << format_csv_row(row) << '\n';
        }
    });
    return exhausted ? exit_grid_exhausted : exit_ok;
}

int cmd_curve(const CurveCommand& options, std::ostream& out) {
    const Representation rep = load_or_generate(options.m);
    const OracleResult reference = oracle_for(options.s, 1e-10);
    const auto points =
        error_curve(rep.filter, rep.weights, options.s, reference, options.grid, options.explore);
    emit_to(options.out, out, [&](std::ostream& os) {
        os << csv_header() << '\n';
        for (const auto& p : points) {
            CsvRow row;
            row.m = options.m;
            row.s = options.s;
            row.N = p.N;
            row.value = p.estimate;
            row.abs_error = p.error;
            row.predicted_error = model_error(rep, options.s, p.N);
            os << format_csv_row(row) << '\n';
        }
    });
    return exit_ok;
}

std::vector<std::string> suite_names() {
    return {"fixtures", "vanishing", "witness", "determinant", "oracle", "continuation"};
}

SuiteResult run_suite(std::string_view name, const std::filesystem::path& fixture_dir) {
    try {
        if (name == "fixtures") return suite_fixtures(fixture_dir);
        if (name == "vanishing") return suite_vanishing(fixture_dir);
        if (name == "witness") return suite_witness();
        if (name == "determinant") return suite_determinant();
        if (name == "oracle") return suite_oracle();
        if (name == "continuation") return suite_continuation();
    } catch (const Error& e) {
        return {std::string(name), false, std::string(error_kind(e)) + ": " + e.what()};
    }
    throw PreconditionError("unknown suite '" + std::string(name) + "'");
}

int cmd_verify(const std::optional<std::string>& suite, std::ostream& out) {
    const std::vector<std::string> known = suite_names();
    if (suite && std::find(known.begin(), known.end(), *suite) == known.end()) {
        throw PreconditionError("unknown suite '" + *suite + "'");
    }
    const std::vector<std::string> names = suite ? std::vector<std::string>{*suite} : known;
    const auto dir = fixture_directory();
    bool all = true;
    for (const auto& name : names) {
        const SuiteResult r = run_suite(name, dir);
        ordered_json j;
        j["suite"] = r.name;
        j["status"] = r.passed ? "pass" : "fail";
        j["detail"] = r.detail;
        out << j.dump() << '\n';
        all = all && r.passed;
    }
    return all ? exit_ok : exit_failure;
}

int exit_code_for(const std::exception& e, std::ostream& err) {
    ordered_json j;
    j["error"] = error_kind(e);
    j["message"] = e.what();
    err << j.dump() << '\n';
    if (dynamic_cast<const PreconditionError*>(&e)) return exit_precondition;
    if (dynamic_cast<const NumericError*>(&e)) return exit_numeric;
    return exit_failure;
}

std::filesystem::path manifest_path() {
    if (const char* env = std::getenv("APZETA_MANIFEST"); env != nullptr && *env != '\0') {
        return env;
    }
    return APZETA_DEFAULT_MANIFEST;
}

Manifest load_manifest(const std::filesystem::path& path) {
    try {
        const auto j = nlohmann::json::parse(read_text_file(path));
        Manifest man;
        man.sigma = j.at("sigma").get<double>();
        auto read_cell = [](const nlohmann::json& c) {
            TableCell cell;
            cell.m = c.at("m").get<std::uint64_t>();
            cell.t = c.value("t", 0.0);
            cell.target = c.at("target").get<double>();
            cell.published_N = c.at("published_N").get<std::uint64_t>();
            cell.desk_scale = c.value("desk_scale", true);
            cell.excluded_reason = c.value("excluded_reason", std::string());
            return cell;
        };
        for (const auto& c : j.at("min_n_table").at("cells")) {
            man.min_n_cells.push_back(read_cell(c));
        }
        const auto& scaling = j.at("scaling_table");
        man.scaling_t = scaling.at("t").get<double>();
        man.scaling_oracle_target = scaling.at("oracle_target").get<double>();
        for (const auto& g : scaling.at("grids")) {
            man.scaling_grids.push_back(
                {g.at("m").get<std::uint64_t>(),
                 make_grid(g.at("start").get<std::uint64_t>(), g.at("stop").get<std::uint64_t>(),
                           g.at("step").get<std::uint64_t>())});
        }
        for (const auto& c : scaling.at("cells")) {
            TableCell cell = read_cell(c);
            cell.t = man.scaling_t;
            man.scaling_cells.push_back(cell);
        }
        return man;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError("malformed manifest " + path.string() + ": " + e.what());
    }
}

} // namespace apzeta
