#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "mmconn/experiment.hpp"

namespace mmconn {

using json = nlohmann::json;

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error(message), field_(std::move(field)), line_(line)
{
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b)
{
    return a.lambda_o == b.lambda_o && a.width_dist == b.width_dist && a.length_dist == b.length_dist &&
           a.d == b.d && a.kappa == b.kappa && a.n == b.n && a.seed == b.seed && a.condition == b.condition &&
           a.coupling == b.coupling && a.csv_path == b.csv_path && a.svg_path == b.svg_path &&
           a.quad.abs_tol == b.quad.abs_tol && a.quad.max_refinements == b.quad.max_refinements;
}

namespace {

int line_at(std::string_view text, std::size_t pos)
{
    pos = std::min(pos, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

class ConfigReader {
public:
    ConfigReader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

    [[noreturn]] void fail(std::initializer_list<std::string_view> path, const std::string& reason) const
    {
        std::string field;
        std::size_t pos = 0;
        bool found = true;
        for (std::string_view key : path) {
            field += "/";
            field += key;
            if (found) {
                const std::size_t at = text_.find("\"" + std::string(key) + "\"", pos);
                if (at == std::string_view::npos)
                    found = false;
                else
                    pos = at;
            }
        }
        const int line = found ? line_at(text_, pos) : 0;
        std::ostringstream msg;
        msg << source_ << ":" << line << ": " << field << ": " << reason;
        throw ConfigError(field, line, msg.str());
    }

    const json& object(const json& parent, std::initializer_list<std::string_view> path, std::string_view key) const
    {
        const json& v = member(parent, path, key);
        if (!v.is_object())
            fail(path, "must be an object");
        return v;
    }

    const json& member(const json& parent, std::initializer_list<std::string_view> path, std::string_view key) const
    {
        auto it = parent.find(std::string(key));
        if (it == parent.end())
            fail(path, "missing required field");
        return *it;
    }

    double number(const json& v, std::initializer_list<std::string_view> path) const
    {
        if (!v.is_number())
            fail(path, "must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            fail(path, "must be finite");
        return x;
    }

    std::uint64_t unsigned_integer(const json& v, std::initializer_list<std::string_view> path) const
    {
        if (!v.is_number_unsigned())
            fail(path, "must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::string string(const json& v, std::initializer_list<std::string_view> path) const
    {
        if (!v.is_string())
            fail(path, "must be a string");
        return v.get<std::string>();
    }

    void only_keys(const json& obj, std::initializer_list<std::string_view> path,
                   std::initializer_list<std::string_view> allowed) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
                std::vector<std::string_view> p(path);
                const std::string key = it.key();
                if (p.empty())
                    fail({key}, "unknown field");
                fail({p.back(), key}, "unknown field");
            }
    }

    Sweepable sweepable(const json& v, std::initializer_list<std::string_view> path) const
    {
        if (v.is_array()) {
            if (v.empty())
                fail(path, "sweep list must not be empty");
            std::vector<double> values;
            for (const json& e : v)
                values.push_back(number(e, path));
            return Sweepable::list(std::move(values));
        }
        return Sweepable::scalar(number(v, path));
    }

    GrainDistribution distribution(const json& v, std::initializer_list<std::string_view> path) const
    {
        if (!v.is_object())
            fail(path, "must be an object with a \"kind\"");
        const std::string kind = string(member(v, path, "kind"), path);
        try {
            if (kind == "deterministic") {
                only_keys(v, path, {"kind", "value"});
                return GrainDistribution::deterministic(number(member(v, path, "value"), path));
            }
            if (kind == "uniform") {
                only_keys(v, path, {"kind", "lo", "hi"});
                return GrainDistribution::uniform(number(member(v, path, "lo"), path),
                                                  number(member(v, path, "hi"), path));
            }
            if (kind == "pmf") {
                only_keys(v, path, {"kind", "values", "probs"});
                const json& values = member(v, path, "values");
                const json& probs = member(v, path, "probs");
                if (!values.is_array() || !probs.is_array())
                    fail(path, "pmf values and probs must be arrays");
                std::vector<double> vs, ps;
                for (const json& e : values)
                    vs.push_back(number(e, path));
                for (const json& e : probs)
                    ps.push_back(number(e, path));
                return GrainDistribution::pmf(std::move(vs), std::move(ps));
            }
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        fail(path, "unknown kind '" + kind + "' (expected deterministic, uniform or pmf)");
    }

private:
    std::string_view text_;
    std::string_view source_;
};

json sweepable_json(const Sweepable& s)
{
    if (s.is_list)
        return json(s.values);
    return json(s.values.front());
}

json distribution_json(const GrainDistribution& dist)
{
    const auto& law = dist.law();
    if (const auto* det = std::get_if<GrainDistribution::Deterministic>(&law))
        return {{"kind", "deterministic"}, {"value", det->value}};
    if (const auto* uni = std::get_if<GrainDistribution::Uniform>(&law))
        return {{"kind", "uniform"}, {"lo", uni->lo}, {"hi", uni->hi}};
    const auto& pmf = std::get<GrainDistribution::Pmf>(law);
    return {{"kind", "pmf"}, {"values", pmf.values}, {"probs", pmf.probs}};
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view source_name)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const int line = line_at(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("", line, std::string(source_name) + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
    }
    const ConfigReader rd(text, source_name);
    if (!root.is_object())
        rd.fail({}, "top level must be an object");
    rd.only_keys(root, {}, {"model", "link", "estimator", "outputs", "quadrature"});

    ExperimentConfig cfg;

    const json& model = rd.object(root, {"model"}, "model");
    rd.only_keys(model, {"model"}, {"lambda_o", "width_dist", "length_dist"});
    cfg.lambda_o = rd.sweepable(rd.member(model, {"model", "lambda_o"}, "lambda_o"), {"model", "lambda_o"});
    for (double v : cfg.lambda_o.values)
        if (v < 0.0)
            rd.fail({"model", "lambda_o"}, "must be non-negative");
    cfg.width_dist = rd.distribution(rd.member(model, {"model", "width_dist"}, "width_dist"), {"model", "width_dist"});
    cfg.length_dist =
        rd.distribution(rd.member(model, {"model", "length_dist"}, "length_dist"), {"model", "length_dist"});

    const json& link = rd.object(root, {"link"}, "link");
    rd.only_keys(link, {"link"}, {"d", "kappa"});
    cfg.d = rd.sweepable(rd.member(link, {"link", "d"}, "d"), {"link", "d"});
    for (double v : cfg.d.values)
        if (!(v > 0.0))
            rd.fail({"link", "d"}, "must be positive");
    cfg.kappa = rd.sweepable(rd.member(link, {"link", "kappa"}, "kappa"), {"link", "kappa"});
    for (double v : cfg.kappa.values)
        if (v < 0.0)
            rd.fail({"link", "kappa"}, "must be non-negative");

    const int lists = int(cfg.lambda_o.is_list) + int(cfg.d.is_list) + int(cfg.kappa.is_list);
    if (lists > 1) {
        if (cfg.lambda_o.is_list && cfg.kappa.is_list)
            rd.fail({"link", "kappa"}, "only one of lambda_o, d, kappa may be a sweep list");
        if (cfg.lambda_o.is_list)
            rd.fail({"link", "d"}, "only one of lambda_o, d, kappa may be a sweep list");
        rd.fail({"link", "kappa"}, "only one of lambda_o, d, kappa may be a sweep list");
    }

    const json& est = rd.object(root, {"estimator"}, "estimator");
    rd.only_keys(est, {"estimator"}, {"n", "seed", "condition", "coupling"});
    cfg.n = rd.unsigned_integer(rd.member(est, {"estimator", "n"}, "n"), {"estimator", "n"});
    if (cfg.n == 0)
        rd.fail({"estimator", "n"}, "must be at least 1");
    cfg.seed = rd.unsigned_integer(rd.member(est, {"estimator", "seed"}, "seed"), {"estimator", "seed"});
    if (est.contains("condition")) {
        try {
            cfg.condition = parse_condition(rd.string(est["condition"], {"estimator", "condition"}));
        } catch (const std::invalid_argument& e) {
            rd.fail({"estimator", "condition"}, e.what());
        }
    }
    if (est.contains("coupling")) {
        const std::string c = rd.string(est["coupling"], {"estimator", "coupling"});
        if (c == "common")
            cfg.coupling = Coupling::common;
        else if (c == "independent")
            cfg.coupling = Coupling::independent;
        else
            rd.fail({"estimator", "coupling"}, "must be \"common\" or \"independent\"");
    }

    if (root.contains("outputs")) {
        const json& out = rd.object(root, {"outputs"}, "outputs");
        rd.only_keys(out, {"outputs"}, {"csv", "svg"});
        if (out.contains("csv"))
            cfg.csv_path = rd.string(out["csv"], {"outputs", "csv"});
        if (out.contains("svg"))
            cfg.svg_path = rd.string(out["svg"], {"outputs", "svg"});
    }

    if (root.contains("quadrature")) {
        const json& q = rd.object(root, {"quadrature"}, "quadrature");
        rd.only_keys(q, {"quadrature"}, {"abs_tol", "max_refinements"});
        if (q.contains("abs_tol")) {
            cfg.quad.abs_tol = rd.number(q["abs_tol"], {"quadrature", "abs_tol"});
            if (!(cfg.quad.abs_tol > 0.0))
                rd.fail({"quadrature", "abs_tol"}, "must be positive");
        }
        if (q.contains("max_refinements")) {
            const std::uint64_t m = rd.unsigned_integer(q["max_refinements"], {"quadrature", "max_refinements"});
            if (m < 1 || m > 40)
                rd.fail({"quadrature", "max_refinements"}, "must be in [1, 40]");
            cfg.quad.max_refinements = static_cast<int>(m);
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    return parse_config(read_text_file(path), path);
}

std::string serialize_config(const ExperimentConfig& cfg)
{
    json root;
    root["model"] = {{"lambda_o", sweepable_json(cfg.lambda_o)},
                     {"width_dist", distribution_json(cfg.width_dist)},
                     {"length_dist", distribution_json(cfg.length_dist)}};
    root["link"] = {{"d", sweepable_json(cfg.d)}, {"kappa", sweepable_json(cfg.kappa)}};
    root["estimator"] = {{"n", cfg.n},
                         {"seed", cfg.seed},
                         {"condition", std::string(to_string(cfg.condition))},
                         {"coupling", cfg.coupling == Coupling::common ? "common" : "independent"}};
    json out = json::object();
    if (cfg.csv_path)
        out["csv"] = *cfg.csv_path;
    if (cfg.svg_path)
        out["svg"] = *cfg.svg_path;
    root["outputs"] = out;
    root["quadrature"] = {{"abs_tol", cfg.quad.abs_tol}, {"max_refinements", cfg.quad.max_refinements}};
    return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace mmconn
