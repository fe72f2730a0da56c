#include "perclab/dist_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace perclab {

using nlohmann::json;

namespace {

void allow_only(const json& j, std::set<std::string> allowed, const std::string& family) {
  allowed.insert("family");
  allowed.insert("max_degree");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("distribution '" + family + "': unknown field '" + it.key() + "'");
}

const json& need(const json& j, const char* key, const std::string& family) {
  if (!j.contains(key)) throw std::invalid_argument("distribution '" + family + "': missing field '" + key + "'");
  return j.at(key);
}

std::int64_t as_degree(const json& v) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw std::invalid_argument("degrees must be non-negative integers");
  return v.get<std::int64_t>();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::int64_t int_arg(double v) {
  if (v < 0 || v != std::floor(v)) throw std::invalid_argument("expected a non-negative integer");
  return std::int64_t(v);
}

DegreeDistribution shorthand(const std::string& text) {
  auto colon = text.find(':');
  std::string fam = text.substr(0, colon);
  auto args = split_numbers(text.substr(colon + 1));
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw std::invalid_argument("wrong number of arguments in '" + text + "'");
  };
  if (fam == "poisson") {
    arity(1, 1);
    if (!(args[0] > 0)) throw std::invalid_argument("poisson mean must be positive");
    return DegreeDistribution::poisson(args[0]);
  }
  if (fam == "point" || fam == "point-mass") {
    arity(1, 1);
    if (int_arg(args[0]) == 0) throw std::invalid_argument("point mass at 0 has zero mean");
    return DegreeDistribution::point_mass(int_arg(args[0]));
  }
  if (fam == "two-point") {
    arity(3, 3);
    return DegreeDistribution::two_point(int_arg(args[0]), int_arg(args[1]), args[2]);
  }
  if (fam == "power-law") {
    arity(1, 2);
    return DegreeDistribution::power_law(args[0], args.size() > 1 ? int_arg(args[1]) : 1);
  }
  throw std::invalid_argument("unknown distribution shorthand '" + fam + "'");
}

}  // namespace

DegreeDistribution distribution_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("distribution must be a JSON object");
  std::string fam = need(j, "family", "?").get<std::string>();
  DegreeDistribution d = DegreeDistribution::point_mass(1);
  if (fam == "poisson") {
    allow_only(j, {"mean"}, fam);
    double mean = need(j, "mean", fam).get<double>();
    if (!(mean > 0)) throw std::invalid_argument("poisson mean must be positive");
    d = DegreeDistribution::poisson(mean);
  } else if (fam == "point-mass") {
    allow_only(j, {"degree"}, fam);
    d = DegreeDistribution::point_mass(as_degree(need(j, "degree", fam)));
  } else if (fam == "two-point") {
    allow_only(j, {"degrees", "weights", "p"}, fam);
    const json& degs = need(j, "degrees", fam);
    if (!degs.is_array() || degs.size() != 2) throw std::invalid_argument("two-point: 'degrees' needs 2 entries");
    double p1;
    if (j.contains("p") == j.contains("weights"))
      throw std::invalid_argument("two-point: give exactly one of 'p' and 'weights'");
    if (j.contains("p")) {
      p1 = j.at("p").get<double>();
    } else {
      auto w = j.at("weights").get<std::vector<double>>();
      if (w.size() != 2) throw std::invalid_argument("two-point: 'weights' needs 2 entries");
      p1 = w[0];
      if (std::abs(w[0] + w[1] - 1.0) > 1e-12) throw std::invalid_argument("two-point: weights must sum to 1");
    }
    d = DegreeDistribution::two_point(as_degree(degs[0]), as_degree(degs[1]), p1);
  } else if (fam == "table") {
    allow_only(j, {"probabilities", "support", "weights", "normalize"}, fam);
    bool normalize = j.value("normalize", false);
    std::vector<std::pair<std::int64_t, double>> entries;
    if (j.contains("probabilities")) {
      if (j.contains("support") || j.contains("weights"))
        throw std::invalid_argument("table: use either 'probabilities' or 'support'+'weights'");
      auto p = j.at("probabilities").get<std::vector<double>>();
      for (std::size_t i = 0; i < p.size(); ++i) entries.emplace_back(std::int64_t(i), p[i]);
    } else {
      const json& sup = need(j, "support", fam);
      auto w = need(j, "weights", fam).get<std::vector<double>>();
      if (!sup.is_array() || sup.size() != w.size())
        throw std::invalid_argument("table: 'support' and 'weights' must have equal length");
      for (std::size_t i = 0; i < w.size(); ++i) entries.emplace_back(as_degree(sup[i]), w[i]);
    }
    if (normalize) {
      double s = 0;
      for (auto& e : entries) s += e.second;
      if (!(s > 0)) throw std::invalid_argument("table: weights sum to zero");
      for (auto& e : entries) e.second /= s;
    }
    d = DegreeDistribution::sparse(std::move(entries));
  } else if (fam == "poisson-mixture") {
    allow_only(j, {"components"}, fam);
    std::vector<PoissonComponent> comps;
    for (auto& c : need(j, "components", fam)) {
      for (auto it = c.begin(); it != c.end(); ++it)
        if (it.key() != "weight" && it.key() != "mean")
          throw std::invalid_argument("poisson-mixture: unknown component field '" + it.key() + "'");
      comps.push_back({need(c, "weight", fam).get<double>(), need(c, "mean", fam).get<double>()});
    }
    d = DegreeDistribution::poisson_mixture(std::move(comps));
  } else if (fam == "power-law") {
    allow_only(j, {"gamma", "k_min", "k_max"}, fam);
    double gamma = need(j, "gamma", fam).get<double>();
    std::int64_t kmin = j.contains("k_min") ? as_degree(j.at("k_min")) : 1;
    d = DegreeDistribution::power_law(gamma, kmin);
    if (j.contains("k_max")) d = d.truncated(as_degree(j.at("k_max")));
  } else {
    throw std::invalid_argument("unknown distribution family '" + fam + "'");
  }
  if (j.contains("max_degree")) d = d.truncated(as_degree(j.at("max_degree")));
  if (!(d.mean() > 0)) throw std::invalid_argument("distribution must have positive mean");
  return d;
}

DegreeDistribution parse_distribution(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return distribution_from_json(json::parse(text));
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string fam = text.substr(0, colon);
    if (fam == "poisson" || fam == "point" || fam == "point-mass" || fam == "two-point" || fam == "power-law")
      return shorthand(text);
  }
  return distribution_from_json(json::parse(read_text(text)));
}

RetentionByDegree parse_retention(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  json j = json::parse(first != std::string::npos && text[first] == '{' ? text : read_text(text));
  if (!j.is_object()) throw std::invalid_argument("retention must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "values" && it.key() != "beyond")
      throw std::invalid_argument("retention: unknown field '" + it.key() + "'");
  RetentionByDegree r;
  r.values = j.value("values", std::vector<double>{});
  r.beyond = j.value("beyond", 1.0);
  r.validate();
  return r;
}

}  // namespace perclab
