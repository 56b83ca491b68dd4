#include <fstream>

#include "rdsize/error.hpp"
#include "rdsize/io.hpp"

namespace rdsize {

Json observed_to_json(const ObservedData& obs) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = obs.size();
  Json ids = Json::array(), recruiter = Json::array(), degrees = Json::array(), times = Json::array(),
       coupons = Json::array();
  for (int i = 0; i < obs.size(); ++i) {
    ids.push_back(obs.id(i));
    if (obs.is_seed(i))
      recruiter.push_back(nullptr);
    else
      recruiter.push_back(obs.recruiter(i));
    degrees.push_back(obs.degree(i));
    times.push_back(obs.time(i));
    coupons.push_back(obs.coupons_issued(i));
  }
  doc["ids"] = std::move(ids);
  doc["seeds"] = std::vector<int>(obs.seeds().begin(), obs.seeds().end());
  doc["recruiter_of"] = std::move(recruiter);
  doc["degrees"] = std::move(degrees);
  doc["times"] = std::move(times);
  doc["coupons_issued"] = std::move(coupons);
  return doc;
}

ObservedData observed_from_json(const Json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    std::vector<ObservedData::Subject> subjects(n);
    for (int i = 0; i < n; ++i) {
      auto& s = subjects[i];
      s.id = doc.at("ids").at(i).get<std::string>();
      const auto& r = doc.at("recruiter_of").at(i);
      s.recruiter = r.is_null() ? -1 : r.get<int>();
      s.degree = doc.at("degrees").at(i).get<int>();
      s.time = doc.at("times").at(i).get<double>();
      s.coupons = doc.at("coupons_issued").at(i).get<int>();
    }
    return ObservedData(std::move(subjects));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed observed-data JSON: ") + e.what());
  }
}

Json truth_to_json(const SimOutput& sim, std::uint64_t seed, int attempts) {
  const SimTruth& t = sim.truth;
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["N"] = t.N;
  doc["p"] = t.p;
  doc["lambda"] = t.lambda;
  doc["seed"] = seed;
  doc["attempts"] = attempts;
  doc["died_out"] = sim.died_out;
  doc["n"] = sim.achieved_n();
  doc["sampled_vertices"] = t.sampled_vertices;
  doc["subgraph_edges"] = t.subgraph.edges();
  doc["subgraph_edge_count"] = t.subgraph.edge_count();
  doc["susceptible"] = t.susceptible;
  doc["population_edges"] = t.population_edges;
  return doc;
}

Json priors_to_json(const Priors& p) {
  return Json{{"alpha", p.alpha}, {"beta", p.beta}, {"eta", p.eta}, {"xi", p.xi}, {"c", p.c}, {"gamma", p.gamma}};
}

Json summary_to_json(const PosteriorSummary& s) {
  Json doc;
  doc["draws"] = s.draws;
  doc["mean"] = s.mean;
  doc["sd"] = s.sd;
  doc["mode"] = s.mode;
  doc["median"] = s.median;
  doc["q025"] = s.q025;
  doc["q975"] = s.q975;
  Json prev = Json::array();
  for (const auto& p : s.prevalence)
    prev.push_back({{"reference_population", p.reference},
                    {"mean_percent", p.mean_percent},
                    {"q025_percent", p.q025_percent},
                    {"q975_percent", p.q975_percent}});
  doc["prevalence"] = std::move(prev);
  return doc;
}

Json counts_to_json(const AcceptanceCounts& c) {
  auto rate = [](std::int64_t a, std::int64_t b) { return b > 0 ? static_cast<double>(a) / b : 0.0; };
  Json doc;
  doc["add_proposed"] = c.add_proposed;
  doc["add_accepted"] = c.add_accepted;
  doc["remove_proposed"] = c.remove_proposed;
  doc["remove_accepted"] = c.remove_accepted;
  doc["edge_noop"] = c.edge_noop;
  doc["n_proposed"] = c.n_proposed;
  doc["n_accepted"] = c.n_accepted;
  doc["add_rate"] = rate(c.add_accepted, c.add_proposed);
  doc["remove_rate"] = rate(c.remove_accepted, c.remove_proposed);
  doc["n_rate"] = rate(c.n_accepted, c.n_proposed);
  return doc;
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace rdsize
