#include "wfde/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wfde/errors.hpp"

namespace wfde {

namespace {

const char* bc_name(BcKind k) {
  switch (k) {
    case BcKind::mdp: return "mdp";
    case BcKind::delta_mdp: return "delta_mdp";
    case BcKind::exact_trace: return "exact_trace";
    case BcKind::zero_flux: return "zero_flux";
  }
  return "unknown";
}

BcKind bc_from_name(const std::string& s) {
  if (s == "mdp") return BcKind::mdp;
  if (s == "delta_mdp") return BcKind::delta_mdp;
  if (s == "exact_trace") return BcKind::exact_trace;
  if (s == "zero_flux") return BcKind::zero_flux;
  throw DomainError("unknown boundary condition name: " + s);
}

nlohmann::ordered_json params_to_json(const Params& p) {
  return {{"N", p.dimension()}, {"gamma", p.gamma()}, {"beta", p.beta()},
          {"m", p.m()},         {"p", p.p()}};
}

Params params_from_json(const nlohmann::json& j) {
  return Params(j.at("N").get<int>(), j.at("gamma").get<double>(),
                j.at("beta").get<double>(), j.at("m").get<double>(),
                j.at("p").get<double>());
}

} // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trajectory_to_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["schema"] = "wfde-trajectory-v1";
  j["params"] = params_to_json(traj.params);
  j["bc"] = bc_name(traj.bc);
  j["grid"] = {{"edges", traj.grid->edges()}};
  nlohmann::ordered_json snaps = nlohmann::ordered_json::array();
  for (const auto& s : traj.snapshots)
    snaps.push_back({{"t", s.time}, {"u", s.values}});
  j["snapshots"] = snaps;
  if (traj.extinction_time) j["extinction_time"] = *traj.extinction_time;
  else j["extinction_time"] = nullptr;
  if (!traj.deltas.empty()) j["deltas"] = traj.deltas;
  return j.dump(2) + "\n";
}

Trajectory trajectory_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const Params params = params_from_json(j.at("params"));
  auto grid = std::make_shared<const WeightedGrid>(
      params, j.at("grid").at("edges").get<std::vector<double>>());
  Trajectory traj(params, grid);
  traj.bc = bc_from_name(j.at("bc").get<std::string>());
  for (const auto& s : j.at("snapshots")) {
    Snapshot snap;
    snap.time = s.at("t").get<double>();
    snap.values = s.at("u").get<std::vector<double>>();
    traj.snapshots.push_back(std::move(snap));
  }
  if (!j.at("extinction_time").is_null())
    traj.extinction_time = j.at("extinction_time").get<double>();
  if (j.contains("deltas")) traj.deltas = j.at("deltas").get<std::vector<double>>();
  return traj;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,r,u\n";
  const auto& centers = traj.grid->centers();
  for (const auto& s : traj.snapshots)
    for (std::size_t i = 0; i < s.values.size(); ++i)
      os << format_double(s.time) << ',' << format_double(centers[i]) << ','
         << format_double(s.values[i]) << '\n';
  return os.str();
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"measured_constant", r.measured_constant},
                   {"pass", r.pass},
                   {"tolerance", r.tolerance},
                   {"context", r.context}});
  }
  return arr.dump(2) + "\n";
}

std::vector<CheckReport> reports_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<CheckReport> out;
  for (const auto& e : j) {
    CheckReport r;
    r.name = e.at("name").get<std::string>();
    r.lhs = e.at("lhs").get<double>();
    r.rhs = e.at("rhs").get<double>();
    r.measured_constant = e.at("measured_constant").get<double>();
    r.pass = e.at("pass").get<bool>();
    r.tolerance = e.at("tolerance").get<double>();
    r.context = e.at("context").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "name,lhs,rhs,constant,pass,context_hash\n";
  for (const auto& r : reports)
    os << r.name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
       << ',' << format_double(r.measured_constant) << ','
       << (r.pass ? "true" : "false") << ',' << context_hash(r.context) << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace wfde
