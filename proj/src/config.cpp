#include "cellcov/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cellcov/quadrature.hpp"

namespace cellcov {

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + message),
      key_(std::move(key)),
      line_(line) {}

namespace {

constexpr std::pair<SweepAxis, std::string_view> kAxisNames[] = {
    {SweepAxis::ThresholdDb, "threshold_db"}, {SweepAxis::SnrDb, "snr_db"},
    {SweepAxis::Epsilon, "epsilon"},          {SweepAxis::Lambda, "lambda"},
    {SweepAxis::SigmaZDb, "sigma_z_db"},      {SweepAxis::Rho, "rho"},
    {SweepAxis::Alpha, "alpha"},
};

constexpr std::pair<Output, std::string_view> kOutputNames[] = {
    {Output::AnalyticCoverage, "analytic_coverage"}, {Output::HighSnrCoverage, "high_snr_coverage"},
    {Output::McCoverage, "mc_coverage"},             {Output::AnalyticRate, "analytic_rate"},
    {Output::McRate, "mc_rate"},                     {Output::McVariance, "mc_variance"},
};

constexpr std::string_view kKeys[] = {
    "lambda",   "alpha",        "zeta",            "rho",  "snr_db",        "epsilon",
    "m_users",  "n_rbs",        "mu_z_db",         "sigma_z_db", "threshold_db", "runs",
    "samples_per_run", "seed",  "window_radius",   "hermite_order", "legendre_order", "sweep",
    "outputs",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value)) return std::nullopt;
    return value;
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }
    std::string_view raw(const std::string& key) const { return entries_.at(key).value; }

    void number(const std::string& key, double& out) const {
        if (!has(key)) return;
        const auto v = to_double(raw(key));
        if (!v) fail(key, "expected a finite number, got '" + std::string(raw(key)) + "'");
        out = *v;
    }

    // Accepts integer literals and integral floating forms such as 1e5.
    long long integer(const std::string& key) const {
        const auto v = to_double(raw(key));
        if (!v || *v != std::floor(*v) || std::abs(*v) > 9.0e15)
            fail(key, "expected an integer, got '" + std::string(raw(key)) + "'");
        return static_cast<long long>(*v);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        throw ConfigError(key, line(key), message);
    }

private:
    std::map<std::string, Entry> entries_;
};

// "auto" leaves the window unset so it follows lambda row by row.
std::optional<Window> parse_window(const Reader& in) {
    const std::string_view v = trim(in.raw("window_radius"));
    if (v == "auto") return std::nullopt;
    try {
        if (v.substr(0, 7) == "square:") {
            const auto side = to_double(v.substr(7));
            if (!side) in.fail("window_radius", "square side must be a number");
            return Window::square(*side);
        }
        const auto radius = to_double(v);
        if (!radius) in.fail("window_radius", "expected 'auto', a radius, or 'square:<side>'");
        return Window::disc(*radius);
    } catch (const ParameterError& e) {
        in.fail("window_radius", e.what());
    }
}

void apply_axis(SimulationConfig& c, SweepAxis axis, double value, bool unit_mean) {
    switch (axis) {
        case SweepAxis::ThresholdDb: c.threshold_db = value; break;
        case SweepAxis::SnrDb: c.params.snr_db = value; break;
        case SweepAxis::Epsilon:
            c.params.epsilon = value;
            c.params.m_users.reset();
            c.params.n_rbs.reset();
            break;
        case SweepAxis::Lambda: c.params.lambda = value; break;
        case SweepAxis::SigmaZDb: c.fading.sigma_z_db = value; break;
        case SweepAxis::Rho: c.params.rho = value; break;
        case SweepAxis::Alpha: c.params.alpha = value; break;
    }
    if (unit_mean) c.fading = FadingParams::unit_mean(c.fading.sigma_z_db);
}

double axis_value(const SimulationConfig& c, SweepAxis axis) {
    switch (axis) {
        case SweepAxis::ThresholdDb: return c.threshold_db;
        case SweepAxis::SnrDb: return c.params.snr_db;
        case SweepAxis::Epsilon: return c.params.epsilon;
        case SweepAxis::Lambda: return c.params.lambda;
        case SweepAxis::SigmaZDb: return c.fading.sigma_z_db;
        case SweepAxis::Rho: return c.params.rho;
        case SweepAxis::Alpha: return c.params.alpha;
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
    for (const auto& [a, name] : kAxisNames)
        if (a == axis) return name;
    return "unknown";
}

std::string_view to_string(Output output) noexcept {
    for (const auto& [o, name] : kOutputNames)
        if (o == output) return name;
    return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view name) noexcept {
    for (const auto& [a, n] : kAxisNames)
        if (n == name) return a;
    return std::nullopt;
}

std::optional<Output> parse_output(std::string_view name) noexcept {
    for (const auto& [o, n] : kOutputNames)
        if (n == name) return o;
    return std::nullopt;
}

bool is_monte_carlo(Output output) noexcept {
    return output == Output::McCoverage || output == Output::McRate || output == Output::McVariance;
}

SimulationConfig SweepSpec::at(double value) const {
    SimulationConfig c = base;
    apply_axis(c, axis, value, unit_mean_shadowing);
    return c;
}

SweepSpec default_spec() {
    SweepSpec spec;
    spec.base.params = NetworkParams{};
    spec.base.params.n_rbs = 15;
    spec.base.fading = FadingParams{};
    spec.base.threshold_db = 0.0;
    spec.values = {spec.base.threshold_db};
    return spec;
}

std::vector<double> parse_value_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty value list");
    const auto range = split(text, ':');
    if (range.size() == 3) {
        const auto start = to_double(range[0]), step = to_double(range[1]), stop = to_double(range[2]);
        if (!start || !step || !stop) throw std::invalid_argument("range must be start:step:stop with numbers");
        if (*step == 0.0) throw std::invalid_argument("range step must be non-zero");
        const double span = (*stop - *start) / *step;
        if (span < -1e-9) throw std::invalid_argument("range step points away from stop");
        const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
        if (count > 100000) throw std::invalid_argument("range has too many points");
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) values.push_back(*start + static_cast<double>(i) * *step);
        return values;
    }
    if (range.size() != 1) throw std::invalid_argument("expected start:step:stop or a comma separated list");
    std::vector<double> values;
    for (auto item : split(text, ',')) {
        const auto v = to_double(item);
        if (!v) throw std::invalid_argument("not a finite number: '" + std::string(item) + "'");
        values.push_back(*v);
    }
    return values;
}

SweepSpec parse_config(std::string_view text, std::string_view source) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::istringstream stream{std::string(text)};
    for (std::string line; std::getline(stream, line);) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(view), line_no, "expected 'key = value' in " + std::string(source));
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        bool known = false;
        for (auto k : kKeys) known = known || k == key;
        if (!known) throw ConfigError(key, line_no, "unknown key");
        if (entries.count(key)) throw ConfigError(key, line_no, "duplicate key (first on line " +
                                                                    std::to_string(entries[key].line) + ")");
        if (value.empty()) throw ConfigError(key, line_no, "missing value");
        entries[key] = {value, line_no};
    }
    const Reader in(std::move(entries));

    SweepSpec spec = default_spec();
    NetworkParams& p = spec.base.params;
    FadingParams& f = spec.base.fading;
    in.number("lambda", p.lambda);
    in.number("alpha", p.alpha);
    in.number("zeta", p.zeta);
    in.number("rho", p.rho);
    in.number("snr_db", p.snr_db);
    in.number("epsilon", p.epsilon);
    in.number("sigma_z_db", f.sigma_z_db);
    in.number("threshold_db", spec.base.threshold_db);

    if (in.has("mu_z_db")) {
        if (trim(in.raw("mu_z_db")) == "unit_mean")
            spec.unit_mean_shadowing = true;
        else
            in.number("mu_z_db", f.mu_z_db);
    }
    if (spec.unit_mean_shadowing) f = FadingParams::unit_mean(f.sigma_z_db);

    if (in.has("n_rbs")) p.n_rbs = static_cast<int>(in.integer("n_rbs"));
    if (in.has("m_users")) p.m_users = static_cast<int>(in.integer("m_users"));

    if (in.has("runs")) spec.base.runs = static_cast<int>(in.integer("runs"));
    if (in.has("samples_per_run")) spec.base.samples_per_run = static_cast<int>(in.integer("samples_per_run"));
    if (in.has("seed")) {
        const std::string_view s = trim(in.raw("seed"));
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
        if (ec != std::errc() || ptr != s.data() + s.size()) in.fail("seed", "expected an unsigned 64-bit integer");
        spec.base.seed = seed;
    }
    if (in.has("hermite_order")) spec.hermite_order = static_cast<int>(in.integer("hermite_order"));
    if (in.has("legendre_order")) spec.legendre_order = static_cast<int>(in.integer("legendre_order"));
    if (spec.hermite_order < 1 || spec.hermite_order > QuadratureRule::kMaxOrder)
        in.fail("hermite_order", "must lie in [1, 64]");
    if (spec.legendre_order < 1 || spec.legendre_order > QuadratureRule::kMaxOrder)
        in.fail("legendre_order", "must lie in [1, 64]");

    try {
        p = resolve_user_ratio(p, in.has("epsilon"));
        validate(p, f);
    } catch (const ParameterError& e) {
        const std::string key = e.field();
        const std::string reported = in.has(key) ? key : (key == "epsilon" && in.has("m_users") ? "m_users" : key);
        std::string message = e.what();
        if (message.starts_with(key + ": ")) message.erase(0, key.size() + 2);
        throw ConfigError(reported, in.line(reported), message);
    }

    if (in.has("window_radius")) spec.base.window = parse_window(in);

    if (in.has("outputs")) {
        spec.outputs.clear();
        for (auto name : split(in.raw("outputs"), ',')) {
            const auto o = parse_output(name);
            if (!o) in.fail("outputs", "unknown output '" + std::string(name) + "'");
            spec.outputs.push_back(*o);
        }
    }

    if (in.has("sweep")) {
        const std::string_view s = in.raw("sweep");
        const auto colon = s.find(':');
        if (colon == std::string_view::npos) in.fail("sweep", "expected '<axis>: <values>'");
        const auto axis = parse_axis(trim(s.substr(0, colon)));
        if (!axis) in.fail("sweep", "unknown axis '" + std::string(trim(s.substr(0, colon))) + "'");
        spec.axis = *axis;
        try {
            spec.values = parse_value_list(s.substr(colon + 1));
        } catch (const std::invalid_argument& e) {
            in.fail("sweep", e.what());
        }
    } else {
        spec.values = {axis_value(spec.base, spec.axis)};
    }

    // Every row must be a valid parameter set before any work starts.
    for (double v : spec.values) {
        try {
            const SimulationConfig row = spec.at(v);
            validate(row);
        } catch (const std::exception& e) {
            in.fail(in.has("sweep") ? "sweep" : "threshold_db", e.what());
        }
    }
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("path", 0, "cannot open " + path.string());
    std::ostringstream text;
    text << file.rdbuf();
    return parse_config(text.str(), path.string());
}

}  // namespace cellcov
