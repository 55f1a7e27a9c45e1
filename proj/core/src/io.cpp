#include "zcq/io.hpp"

#include <cinttypes>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#ifndef ZCQ_VERSION
#define ZCQ_VERSION "0.0.0"
#endif
#ifndef ZCQ_GIT_REV
#define ZCQ_GIT_REV "unknown"
#endif

namespace zcq {
namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

void dump_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void expect_version(const json& j, int version, const std::string& path) {
  if (!j.contains("version") || j.at("version").get<int>() != version) {
    throw std::runtime_error(path + ": unsupported version");
  }
}

std::string h_bin_path(const std::string& json_path) {
  const auto dot = json_path.rfind('.');
  const std::string stem =
      (dot == std::string::npos) ? json_path : json_path.substr(0, dot);
  return stem + ".h.bin";
}

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

template <typename T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  const std::uint64_t n = v.size();
  write_pod(out, n);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(T)));
}

template <typename T>
void read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  read_pod(in, n);
  if (n > (1ull << 32)) throw std::runtime_error("corrupt vector length");
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

}  // namespace

void save_waveform_set(const WaveformSet& set, const std::string& path) {
  json members = json::array();
  for (const Waveform& w : set.members) {
    members.push_back({{"id", w.id},
                       {"crossing_index", w.crossing_index},
                       {"phi", w.phi},
                       {"samples", w.samples},
                       {"sign_seq", w.sign_seq},
                       {"trace", w.trace},
                       {"energy", w.energy},
                       {"starts_negative", w.starts_negative}});
  }
  const json j{{"version", 1},
               {"pattern",
                {{"kind", set.pattern.kind == PatternKind::uniform ? "uniform" : "nonuniform"},
                 {"n", set.pattern.n},
                 {"lambda", set.pattern.lambda}}},
               {"kappa", set.kappa},
               {"t_nyq", set.t_nyq},
               {"window",
                {{"kind", set.window.kind == WindowSpec::Kind::hard ? "hard" : "raised_cosine"},
                 {"alpha", set.window.alpha}}},
               {"trace_opts",
                {{"trace_points_per_interval", set.trace_opts.trace_points_per_interval},
                 {"quad_panels_per_subinterval", set.trace_opts.quad_panels_per_subinterval},
                 {"product_depth", set.trace_opts.product_depth}}},
               {"energy_target", set.energy_target},
               {"paired", set.paired},
               {"members", members}};
  dump_file(j, path);
}

WaveformSet load_waveform_set(const std::string& path) {
  const json j = parse_file(path);
  expect_version(j, 1, path);
  WaveformSet set;
  const json& p = j.at("pattern");
  set.pattern = make_pattern(p.at("kind").get<std::string>() == "uniform"
                                 ? PatternKind::uniform
                                 : PatternKind::nonuniform,
                             p.at("n").get<int>(), p.at("lambda").get<double>());
  set.kappa = j.at("kappa").get<int>();
  set.t_nyq = j.at("t_nyq").get<double>();
  const json& w = j.at("window");
  set.window.kind = w.at("kind").get<std::string>() == "hard" ? WindowSpec::Kind::hard
                                                              : WindowSpec::Kind::raised_cosine;
  set.window.alpha = w.at("alpha").get<double>();
  const json& t = j.at("trace_opts");
  set.trace_opts.trace_points_per_interval = t.at("trace_points_per_interval").get<int>();
  set.trace_opts.quad_panels_per_subinterval = t.at("quad_panels_per_subinterval").get<int>();
  set.trace_opts.product_depth = t.at("product_depth").get<int>();
  set.energy_target = j.at("energy_target").get<double>();
  set.paired = j.at("paired").get<bool>();
  for (const json& mj : j.at("members")) {
    Waveform wv;
    wv.id = mj.at("id").get<int>();
    wv.crossing_index = mj.at("crossing_index").get<std::vector<int>>();
    wv.phi = mj.at("phi").get<double>();
    wv.samples = mj.at("samples").get<std::vector<double>>();
    wv.sign_seq = mj.at("sign_seq").get<std::vector<std::int8_t>>();
    wv.trace = mj.at("trace").get<std::vector<double>>();
    wv.energy = mj.at("energy").get<double>();
    wv.starts_negative = mj.at("starts_negative").get<bool>();
    set.members.push_back(std::move(wv));
  }
  return set;
}

void save_dmc(const DmcModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write("ZCQDMC01", 8);
  write_pod(out, model.m);
  write_pod(out, model.kappa);
  write_pod(out, model.n);
  write_pod(out, model.n_out);
  write_pod(out, model.snr_db);
  write_pod(out, model.n0);
  write_pod(out, model.sigma);
  write_pod(out, model.t_nyq);
  write_vec(out, model.input_dist);
  write_vec(out, model.samples);
  write_vec(out, model.sign_seq);
  write_vec(out, model.log_p_plus);
  write_vec(out, model.log_p_minus);
  write_vec(out, model.trans);
  if (!out) throw std::runtime_error("write failed: " + path);
}

DmcModel load_dmc(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "ZCQDMC01", 8) != 0) {
    throw std::runtime_error(path + ": not a DMC file");
  }
  DmcModel model;
  read_pod(in, model.m);
  read_pod(in, model.kappa);
  read_pod(in, model.n);
  read_pod(in, model.n_out);
  read_pod(in, model.snr_db);
  read_pod(in, model.n0);
  read_pod(in, model.sigma);
  read_pod(in, model.t_nyq);
  read_vec(in, model.input_dist);
  read_vec(in, model.samples);
  read_vec(in, model.sign_seq);
  read_vec(in, model.log_p_plus);
  read_vec(in, model.log_p_minus);
  read_vec(in, model.trans);
  if (!in) throw std::runtime_error(path + ": truncated DMC file");
  return model;
}

void save_ldpc(const LdpcCode& code, const std::string& path) {
  const std::string hpath = h_bin_path(path);
  const json j{{"version", 1},         {"n", code.n},
               {"k", code.k},          {"col_weight", code.col_weight},
               {"seed", code.seed},    {"h_file", hpath}};
  dump_file(j, path);
  std::ofstream out(hpath, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + hpath);
  out.write("ZCQH0001", 8);
  const std::int32_t m = static_cast<std::int32_t>(code.rows.size());
  write_pod(out, m);
  for (const auto& row : code.rows) {
    const std::int32_t deg = static_cast<std::int32_t>(row.size());
    write_pod(out, deg);
    for (int v : row) {
      const std::int32_t col = v;
      write_pod(out, col);
    }
  }
  if (!out) throw std::runtime_error("write failed: " + hpath);
}

LdpcCode load_ldpc(const std::string& path) {
  const json j = parse_file(path);
  expect_version(j, 1, path);
  LdpcCode code;
  code.n = j.at("n").get<int>();
  code.k = j.at("k").get<int>();
  code.col_weight = j.at("col_weight").get<int>();
  code.seed = j.at("seed").get<std::uint64_t>();
  const std::string hpath = j.at("h_file").get<std::string>();
  std::ifstream in(hpath, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + hpath);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "ZCQH0001", 8) != 0) {
    throw std::runtime_error(hpath + ": not a parity row file");
  }
  std::int32_t m = 0;
  read_pod(in, m);
  if (m != code.n - code.k) throw std::runtime_error(hpath + ": check count mismatch");
  code.rows.resize(m);
  for (auto& row : code.rows) {
    std::int32_t deg = 0;
    read_pod(in, deg);
    if (deg < 0 || deg > code.n) throw std::runtime_error(hpath + ": corrupt row");
    row.resize(deg);
    for (auto& v : row) {
      std::int32_t col = 0;
      read_pod(in, col);
      if (col < 0 || col >= code.n) throw std::runtime_error(hpath + ": column out of range");
      v = col;
    }
  }
  if (!in) throw std::runtime_error(hpath + ": truncated row file");
  ldpc_finalize(code);
  return code;
}

void save_labeling(const Labeling& lab, const std::string& path) {
  const json j{{"version", 1},
               {"q", lab.q},
               {"kind", lab.kind},
               {"d_sum", lab.d_sum},
               {"n_free", lab.n_free},
               {"member_to_label", lab.member_to_label}};
  dump_file(j, path);
}

Labeling load_labeling(const std::string& path) {
  const json j = parse_file(path);
  expect_version(j, 1, path);
  Labeling lab;
  lab.q = j.at("q").get<int>();
  lab.kind = j.at("kind").get<std::string>();
  lab.d_sum = j.at("d_sum").get<long long>();
  lab.n_free = j.at("n_free").get<int>();
  lab.member_to_label = j.at("member_to_label").get<std::vector<std::uint32_t>>();
  if (lab.member_to_label.size() != (1ull << lab.q)) {
    throw std::runtime_error(path + ": label table size mismatch");
  }
  lab.label_to_member.assign(lab.member_to_label.size(), -1);
  for (std::size_t u = 0; u < lab.member_to_label.size(); ++u) {
    const std::uint32_t t = lab.member_to_label[u];
    if (t >= lab.member_to_label.size() || lab.label_to_member[t] != -1) {
      throw std::runtime_error(path + ": labels are not a bijection");
    }
    lab.label_to_member[t] = static_cast<int>(u);
  }
  return lab;
}

CsvWriter::CsvWriter(const std::string& path, std::span<const std::string> columns)
    : n_cols_(columns.size()) {
  if (columns.empty()) throw std::invalid_argument("CsvWriter: no columns");
  f_ = std::fopen(path.c_str(), "w");
  if (!f_) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::fprintf(f_, "%s%s", i ? "," : "", columns[i].c_str());
  }
  std::fputc('\n', f_);
}

CsvWriter::~CsvWriter() {
  if (f_) std::fclose(f_);
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != n_cols_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::fprintf(f_, "%s%.17g", i ? "," : "", values[i]);
  }
  std::fputc('\n', f_);
}

std::string version_string() { return ZCQ_VERSION; }

std::string git_rev() { return ZCQ_GIT_REV; }

void write_run_sidecar(const std::string& path, const SimConfig& config,
                       const std::string& command, double runtime_s,
                       const std::vector<std::string>& outputs) {
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016" PRIx64, config_hash(config));
  const json j{{"version", version_string()},
               {"git_rev", git_rev()},
               {"command", command},
               {"runtime_s", runtime_s},
               {"outputs", outputs},
               {"config_hash", hash_hex},
               {"config", json::parse(canonical_config_json(config))}};
  dump_file(j, path);
}

}  // namespace zcq
