#include "psep/models.hpp"

#include "psep/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace psep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DomainBox positive_orthant(int n) {
    DomainBox box;
    box.intervals.assign(n, Interval{0.0, kInf});
    return box;
}

RationalMatrix zeros(int n) { return RationalMatrix(n, n); }

} // namespace

CoefficientMatrix cyclic_lv_matrix() {
    RationalMatrix m = zeros(3);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(-1);
    m.at(1, 2) = Rational(1);
    m.at(2, 1) = Rational(-1);
    m.at(2, 0) = Rational(1);
    m.at(0, 2) = Rational(-1);
    return CoefficientMatrix(std::move(m));
}

SeparableStructure lotka_volterra(CoefficientMatrix A) {
    int n = A.dim();
    std::vector<ChartFunction> charts(n, ChartFunction::power(1));
    return SeparableStructure(std::move(A), std::move(charts), positive_orthant(n));
}

SeparableStructure toda(int N) {
    if (N < 2)
        throw ValidationError("toda requires N >= 2, got " + std::to_string(N));
    const int n = 2 * N - 1;
    RationalMatrix m = zeros(n);
    // A = [[0, M], [-M^T, 0]], M bidiagonal with rows (-1, 1).
    for (int i = 0; i < N - 1; ++i) {
        m.at(i, (N - 1) + i) = Rational(-1);
        m.at((N - 1) + i, i) = Rational(1);
        m.at(i, (N - 1) + i + 1) = Rational(1);
        m.at((N - 1) + i + 1, i) = Rational(-1);
    }
    std::vector<ChartFunction> charts;
    charts.reserve(n);
    for (int i = 0; i < N - 1; ++i)
        charts.push_back(ChartFunction::power(1));
    for (int j = 0; j < N; ++j)
        charts.push_back(ChartFunction::constant(Rational(1)));
    DomainBox box;
    box.intervals.assign(N - 1, Interval{0.0, kInf});
    box.intervals.insert(box.intervals.end(), N, Interval{-kInf, kInf});
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
}

SeparableStructure relativistic_toda(int N) {
    if (N < 2)
        throw ValidationError("relativistic_toda requires N >= 2, got " + std::to_string(N));
    const int n = 2 * N - 1;
    RationalMatrix m = zeros(n);
    // {alpha_i, alpha_{i+1}} = alpha_i alpha_{i+1}
    for (int i = 0; i + 1 < N - 1; ++i) {
        m.at(i, i + 1) = Rational(1);
        m.at(i + 1, i) = Rational(-1);
    }
    // {alpha_i, beta_i} = -alpha_i beta_i, {alpha_i, beta_{i+1}} = alpha_i beta_{i+1}
    for (int i = 0; i < N - 1; ++i) {
        m.at(i, (N - 1) + i) = Rational(-1);
        m.at((N - 1) + i, i) = Rational(1);
        m.at(i, (N - 1) + i + 1) = Rational(1);
        m.at((N - 1) + i + 1, i) = Rational(-1);
    }
    std::vector<ChartFunction> charts(n, ChartFunction::power(1));
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts),
                              positive_orthant(n));
}

SeparableStructure kermack_mckendric(const Rational& r, const Rational& a) {
    RationalMatrix m = zeros(3);
    m.at(0, 1) = -r;
    m.at(1, 0) = r;
    m.at(1, 2) = -a;
    m.at(2, 1) = a;
    std::vector<ChartFunction> charts = {ChartFunction::power(1), ChartFunction::power(1),
                                         ChartFunction::constant(Rational(1))};
    DomainBox box;
    box.intervals = {Interval{0.0, kInf}, Interval{0.0, kInf}, Interval{-kInf, kInf}};
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
}

SeparableStructure circle_map() {
    RationalMatrix m = zeros(3);
    m.at(0, 2) = Rational(-1);
    m.at(2, 0) = Rational(1);
    m.at(1, 2) = Rational(-1);
    m.at(2, 1) = Rational(1);
    std::vector<ChartFunction> charts(3, ChartFunction::power(2));
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts),
                              positive_orthant(3));
}

SeparableStructure two_by_two_game() {
    RationalMatrix m = zeros(2);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(-1);
    std::vector<ChartFunction> charts(2, ChartFunction::logistic());
    DomainBox box;
    box.intervals = {Interval{0.0, 1.0}, Interval{0.0, 1.0}};
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
}

const std::vector<ZooEntry>& zoo() {
    static const std::vector<ZooEntry> entries = {
        {"lotka_volterra", "preset=cyclic", "J^ij = a^ij x_i x_j on the positive orthant"},
        {"toda", "N=<chain length, >=2>", "Toda lattice in Flaschka variables"},
        {"relativistic_toda", "N=<chain length, >=2>", "relativistic Toda lattice"},
        {"kermack_mckendric", "r=<rational> a=<rational>", "epidemic model structure"},
        {"circle_map", "(none)", "charts x^2 in every coordinate"},
        {"two_by_two_game", "(none)", "logistic charts on the open unit square"},
    };
    return entries;
}

namespace {

int parse_int_param(const std::map<std::string, std::string>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw ValidationError("missing parameter \"" + key + "\"");
    try {
        std::size_t used = 0;
        int v = std::stoi(it->second, &used);
        if (used != it->second.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("parameter \"" + key + "\" must be an integer, got \"" +
                              it->second + "\"");
    }
}

Rational parse_rational_param(const std::map<std::string, std::string>& params,
                              const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw ValidationError("missing parameter \"" + key + "\"");
    try {
        return Rational::from_string(it->second);
    } catch (const std::exception& e) {
        throw ValidationError("parameter \"" + key + "\": " + e.what());
    }
}

void reject_unknown(const std::map<std::string, std::string>& params,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const char* k : known)
            if (key == k)
                ok = true;
        if (!ok)
            throw ValidationError("unknown parameter \"" + key + "\"");
    }
}

} // namespace

SeparableStructure instantiate(const std::string& name,
                               const std::map<std::string, std::string>& params) {
    if (name == "lotka_volterra") {
        reject_unknown(params, {"preset"});
        auto it = params.find("preset");
        std::string preset = it == params.end() ? "cyclic" : it->second;
        if (preset != "cyclic")
            throw ValidationError("unknown lotka_volterra preset \"" + preset +
                                  "\" (available: cyclic); use a model file for a custom matrix");
        return lotka_volterra(cyclic_lv_matrix());
    }
    if (name == "toda") {
        reject_unknown(params, {"N"});
        return toda(parse_int_param(params, "N"));
    }
    if (name == "relativistic_toda") {
        reject_unknown(params, {"N"});
        return relativistic_toda(parse_int_param(params, "N"));
    }
    if (name == "kermack_mckendric") {
        reject_unknown(params, {"r", "a"});
        return kermack_mckendric(parse_rational_param(params, "r"),
                                 parse_rational_param(params, "a"));
    }
    if (name == "circle_map") {
        reject_unknown(params, {});
        return circle_map();
    }
    if (name == "two_by_two_game") {
        reject_unknown(params, {});
        return two_by_two_game();
    }
    throw ValidationError("unknown model \"" + name + "\" (see the models subcommand)");
}

// ---------------------------------------------------------------------------
// JSON files
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

double endpoint_from_json(const json& v, const std::string& what) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf")
            return kInf;
        if (s == "-inf")
            return -kInf;
        throw ValidationError(what + ": unknown endpoint sentinel \"" + s +
                              "\" (use numbers or \"inf\"/\"-inf\")");
    }
    if (v.is_number())
        return v.get<double>();
    throw ValidationError(what + ": endpoint must be a number or \"inf\"/\"-inf\"");
}

json endpoint_to_json(double v) {
    if (v == kInf)
        return "inf";
    if (v == -kInf)
        return "-inf";
    return v;
}

Interval interval_from_json(const json& v, const std::string& what) {
    if (v.is_string()) {
        // Bracket form, e.g. "(0,1)". Closed brackets are rejected: domains
        // and chart intervals are open by definition.
        const std::string s = v.get<std::string>();
        if (s.size() < 2 || (s.front() != '(' && s.front() != '[') ||
            (s.back() != ')' && s.back() != ']'))
            throw ValidationError(what + ": malformed interval \"" + s + "\"");
        if (s.front() == '[' || s.back() == ']')
            throw ValidationError(what + ": interval \"" + s +
                                  "\" is closed; domain intervals must be open");
        std::string body = s.substr(1, s.size() - 2);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw ValidationError(what + ": malformed interval \"" + s + "\"");
        auto parse_end = [&](std::string t) -> double {
            // trim spaces
            while (!t.empty() && t.front() == ' ')
                t.erase(t.begin());
            while (!t.empty() && t.back() == ' ')
                t.pop_back();
            if (t == "inf")
                return kInf;
            if (t == "-inf")
                return -kInf;
            try {
                std::size_t used = 0;
                double d = std::stod(t, &used);
                if (used != t.size())
                    throw std::invalid_argument("trailing");
                return d;
            } catch (const std::exception&) {
                throw ValidationError(what + ": bad interval endpoint \"" + t + "\"");
            }
        };
        return {parse_end(body.substr(0, comma)), parse_end(body.substr(comma + 1))};
    }
    if (!v.is_array() || v.size() != 2)
        throw ValidationError(what + ": interval must be a [lo, hi] pair");
    return {endpoint_from_json(v[0], what), endpoint_from_json(v[1], what)};
}

Rational rational_field(const json& v, const std::string& what) {
    if (!v.is_string())
        throw ValidationError(what + ": rationals must be strings like \"3\" or \"-1/2\"");
    try {
        return Rational::from_string(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

ChartFunction chart_from_json(const json& v, int coordinate) {
    std::string what = "chart " + std::to_string(coordinate);
    if (!v.is_object() || !v.contains("family"))
        throw ValidationError(what + ": expected an object with a \"family\" field");
    std::string family = v.at("family").get<std::string>();
    ChartFunction chart = [&]() -> ChartFunction {
        if (family == "constant")
            return ChartFunction::constant(rational_field(v.at("c"), what + " (c)"));
        if (family == "power") {
            if (!v.contains("k") || !v.at("k").is_number_integer())
                throw ValidationError(what + ": power chart needs an integer \"k\"");
            return ChartFunction::power(v.at("k").get<int>());
        }
        if (family == "affine")
            return ChartFunction::affine(rational_field(v.at("a"), what + " (a)"),
                                         rational_field(v.at("b"), what + " (b)"));
        if (family == "logistic")
            return ChartFunction::logistic();
        if (family == "exp")
            return ChartFunction::exponential(rational_field(v.at("lambda"), what + " (lambda)"));
        if (family == "custom") {
            if (!v.contains("expr") || !v.at("expr").is_string())
                throw ValidationError(what + ": custom chart needs an \"expr\" string");
            Interval iv{-kInf, kInf};
            if (v.contains("interval"))
                iv = interval_from_json(v.at("interval"), what);
            try {
                return ChartFunction::custom(v.at("expr").get<std::string>(), iv);
            } catch (const ParseError& e) {
                throw ValidationError(what + ": " + e.what());
            }
        }
        throw ValidationError(what + ": unknown family \"" + family + "\"");
    }();
    if (family != "custom" && v.contains("interval"))
        chart = chart.with_interval(interval_from_json(v.at("interval"), what));
    return chart;
}

json chart_to_json(const ChartFunction& c) {
    json j;
    switch (c.family()) {
    case ChartFamily::Constant:
        j["family"] = "constant";
        j["c"] = c.constant_value().str();
        break;
    case ChartFamily::Power:
        j["family"] = "power";
        j["k"] = c.power_exponent();
        break;
    case ChartFamily::Affine:
        j["family"] = "affine";
        j["a"] = c.affine_a().str();
        j["b"] = c.affine_b().str();
        break;
    case ChartFamily::Logistic:
        j["family"] = "logistic";
        break;
    case ChartFamily::Exponential:
        j["family"] = "exp";
        j["lambda"] = c.exp_lambda().str();
        break;
    case ChartFamily::Custom:
        j["family"] = "custom";
        j["expr"] = c.custom_source();
        break;
    }
    j["interval"] = json::array({endpoint_to_json(c.interval().lo), endpoint_to_json(c.interval().hi)});
    return j;
}

LoadedAny parse_model_object(const json& doc, const std::string& context) {
    if (!doc.is_object())
        throw ValidationError("model document must be a JSON object");
    if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer())
        throw ValidationError("model needs an integer \"dimension\"");
    const int n = doc.at("dimension").get<int>();
    if (n < 1)
        throw ValidationError("dimension must be >= 1");

    std::string name = doc.value("name", std::string());

    auto domain_from = [&](bool required) -> std::optional<DomainBox> {
        if (!doc.contains("domain")) {
            if (required)
                throw ValidationError("field models need an explicit \"domain\"");
            return std::nullopt;
        }
        const json& d = doc.at("domain");
        if (!d.is_array() || static_cast<int>(d.size()) != n)
            throw ValidationError("\"domain\" must be an array of " + std::to_string(n) +
                                  " intervals");
        DomainBox box;
        for (int i = 0; i < n; ++i)
            box.intervals.push_back(interval_from_json(d[i], "domain interval " + std::to_string(i + 1)));
        return box;
    };

    if (doc.contains("field")) {
        const json& f = doc.at("field");
        if (!f.is_object())
            throw ValidationError("\"field\" must map \"i,j\" index pairs to expressions");
        std::map<std::pair<int, int>, ExprPtr> upper;
        for (auto it = f.begin(); it != f.end(); ++it) {
            auto comma = it.key().find(',');
            if (comma == std::string::npos)
                throw ValidationError("field key \"" + it.key() + "\" is not of the form \"i,j\"");
            int i = 0, j = 0;
            try {
                i = std::stoi(it.key().substr(0, comma));
                j = std::stoi(it.key().substr(comma + 1));
            } catch (const std::exception&) {
                throw ValidationError("field key \"" + it.key() + "\" is not of the form \"i,j\"");
            }
            if (!it.value().is_string())
                throw ValidationError("field entry " + it.key() + " must be an expression string");
            try {
                upper[{i, j}] = parse(it.value().get<std::string>(), n);
            } catch (const ParseError& e) {
                throw ValidationError("field entry " + it.key() + ": " + e.what());
            }
        }
        LoadedField out{MatrixField::from_expressions(n, upper), *domain_from(true), name};
        return out;
    }

    if (!doc.contains("matrix"))
        throw ValidationError("model needs either \"matrix\" (separable) or \"field\"");
    const json& mj = doc.at("matrix");
    if (!mj.is_array() || static_cast<int>(mj.size()) != n * n)
        throw ValidationError("\"matrix\" must be a row-major array of " + std::to_string(n * n) +
                              " rational strings");
    std::vector<std::string> entries;
    entries.reserve(mj.size());
    for (const json& e : mj) {
        if (!e.is_string())
            throw ValidationError("matrix entries must be rational strings");
        entries.push_back(e.get<std::string>());
    }
    CoefficientMatrix A(RationalMatrix::from_strings(n, n, entries));

    if (!doc.contains("charts") || !doc.at("charts").is_array() ||
        static_cast<int>(doc.at("charts").size()) != n)
        throw ValidationError("\"charts\" must be an array of " + std::to_string(n) +
                              " chart descriptors");
    std::vector<ChartFunction> charts;
    charts.reserve(n);
    for (int i = 0; i < n; ++i)
        charts.push_back(chart_from_json(doc.at("charts")[i], i + 1));

    DomainBox box;
    if (auto d = domain_from(false)) {
        box = *d;
    } else {
        for (const ChartFunction& c : charts)
            box.intervals.push_back(c.interval());
    }

    LoadedModel out{SeparableStructure(std::move(A), std::move(charts), std::move(box)),
                    std::nullopt, std::string(), name};
    if (doc.contains("hamiltonian")) {
        if (!doc.at("hamiltonian").is_string())
            throw ValidationError("\"hamiltonian\" must be an expression string");
        out.hamiltonian_source = doc.at("hamiltonian").get<std::string>();
        try {
            out.hamiltonian = parse(out.hamiltonian_source, n);
        } catch (const ParseError& e) {
            throw ValidationError(std::string("hamiltonian: ") + e.what());
        }
    }
    (void)context;
    return out;
}

} // namespace

LoadedAny parse_model_json(const std::string& text, const std::string& context) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(context + ": " + e.what(), e.byte);
    }
    try {
        return parse_model_object(doc, context);
    } catch (const ValidationError& e) {
        throw ValidationError(context + ": " + e.what());
    }
}

LoadedAny load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str(), path);
}

std::string serialize_model(const SeparableStructure& s, const std::string& name,
                            const std::string& hamiltonian_source) {
    json j;
    if (!name.empty())
        j["name"] = name;
    j["dimension"] = s.dim();
    j["matrix"] = s.coefficients().matrix().to_strings();
    json charts = json::array();
    for (int i = 0; i < s.dim(); ++i)
        charts.push_back(chart_to_json(s.chart(i)));
    j["charts"] = charts;
    json domain = json::array();
    for (const Interval& iv : s.domain().intervals)
        domain.push_back(json::array({endpoint_to_json(iv.lo), endpoint_to_json(iv.hi)}));
    j["domain"] = domain;
    if (!hamiltonian_source.empty())
        j["hamiltonian"] = hamiltonian_source;
    return j.dump(2) + "\n";
}

} // namespace psep
