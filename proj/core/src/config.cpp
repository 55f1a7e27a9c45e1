#include "zcq/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "zcq/math_util.hpp"

namespace zcq {
namespace {

using nlohmann::json;

json to_json(const SimConfig& c) {
  return json{{"pattern", c.pattern},
              {"n", c.n},
              {"lambda", c.lambda},
              {"kappa", c.kappa},
              {"t_nyq", c.t_nyq},
              {"window", c.window},
              {"alpha", c.alpha},
              {"energy", c.energy},
              {"trace_ppi", c.trace_ppi},
              {"quad_panels", c.quad_panels},
              {"product_depth", c.product_depth},
              {"zero_pad_factor", c.zero_pad_factor},
              {"eta", c.eta},
              {"periodogram_symbols", c.periodogram_symbols},
              {"noise_seed", c.noise_seed},
              {"m_target", c.m_target},
              {"eta_slack", c.eta_slack},
              {"w_hi_factor", c.w_hi_factor},
              {"max_bisect", c.max_bisect},
              {"snr_db", c.snr_db},
              {"snr_start", c.snr_start},
              {"snr_stop", c.snr_stop},
              {"snr_step", c.snr_step},
              {"m_list", c.m_list},
              {"n_list", c.n_list},
              {"ba_tol", c.ba_tol},
              {"ba_max_iter", c.ba_max_iter},
              {"labeling", c.labeling},
              {"allow_greedy", c.allow_greedy},
              {"label_seed", c.label_seed},
              {"ldpc_n", c.ldpc_n},
              {"ldpc_k", c.ldpc_k},
              {"ldpc_col_weight", c.ldpc_col_weight},
              {"ldpc_seed", c.ldpc_seed},
              {"demod_iters", c.demod_iters},
              {"ldpc_iters", c.ldpc_iters},
              {"llr_clip", c.llr_clip},
              {"use_interleaver", c.use_interleaver},
              {"sim_seed", c.sim_seed},
              {"block_frames", c.block_frames},
              {"max_frames", c.max_frames},
              {"target_frame_errors", c.target_frame_errors},
              {"max_threads", c.max_threads}};
}

template <typename T>
void read_into(const json& v, const char* key, T& out) {
  try {
    out = v.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: bad value for \"") + key + '"');
  }
}

}  // namespace

SimConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  SimConfig c;
  const json defaults = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!defaults.contains(key)) {
      throw std::invalid_argument("config: unknown key \"" + key + '"');
    }
    if (key == "pattern") read_into(value, "pattern", c.pattern);
    else if (key == "n") read_into(value, "n", c.n);
    else if (key == "lambda") read_into(value, "lambda", c.lambda);
    else if (key == "kappa") read_into(value, "kappa", c.kappa);
    else if (key == "t_nyq") read_into(value, "t_nyq", c.t_nyq);
    else if (key == "window") read_into(value, "window", c.window);
    else if (key == "alpha") read_into(value, "alpha", c.alpha);
    else if (key == "energy") read_into(value, "energy", c.energy);
    else if (key == "trace_ppi") read_into(value, "trace_ppi", c.trace_ppi);
    else if (key == "quad_panels") read_into(value, "quad_panels", c.quad_panels);
    else if (key == "product_depth") read_into(value, "product_depth", c.product_depth);
    else if (key == "zero_pad_factor") read_into(value, "zero_pad_factor", c.zero_pad_factor);
    else if (key == "eta") read_into(value, "eta", c.eta);
    else if (key == "periodogram_symbols")
      read_into(value, "periodogram_symbols", c.periodogram_symbols);
    else if (key == "noise_seed") read_into(value, "noise_seed", c.noise_seed);
    else if (key == "m_target") read_into(value, "m_target", c.m_target);
    else if (key == "eta_slack") read_into(value, "eta_slack", c.eta_slack);
    else if (key == "w_hi_factor") read_into(value, "w_hi_factor", c.w_hi_factor);
    else if (key == "max_bisect") read_into(value, "max_bisect", c.max_bisect);
    else if (key == "snr_db") read_into(value, "snr_db", c.snr_db);
    else if (key == "snr_start") read_into(value, "snr_start", c.snr_start);
    else if (key == "snr_stop") read_into(value, "snr_stop", c.snr_stop);
    else if (key == "snr_step") read_into(value, "snr_step", c.snr_step);
    else if (key == "m_list") read_into(value, "m_list", c.m_list);
    else if (key == "n_list") read_into(value, "n_list", c.n_list);
    else if (key == "ba_tol") read_into(value, "ba_tol", c.ba_tol);
    else if (key == "ba_max_iter") read_into(value, "ba_max_iter", c.ba_max_iter);
    else if (key == "labeling") read_into(value, "labeling", c.labeling);
    else if (key == "allow_greedy") read_into(value, "allow_greedy", c.allow_greedy);
    else if (key == "label_seed") read_into(value, "label_seed", c.label_seed);
    else if (key == "ldpc_n") read_into(value, "ldpc_n", c.ldpc_n);
    else if (key == "ldpc_k") read_into(value, "ldpc_k", c.ldpc_k);
    else if (key == "ldpc_col_weight") read_into(value, "ldpc_col_weight", c.ldpc_col_weight);
    else if (key == "ldpc_seed") read_into(value, "ldpc_seed", c.ldpc_seed);
    else if (key == "demod_iters") read_into(value, "demod_iters", c.demod_iters);
    else if (key == "ldpc_iters") read_into(value, "ldpc_iters", c.ldpc_iters);
    else if (key == "llr_clip") read_into(value, "llr_clip", c.llr_clip);
    else if (key == "use_interleaver") read_into(value, "use_interleaver", c.use_interleaver);
    else if (key == "sim_seed") read_into(value, "sim_seed", c.sim_seed);
    else if (key == "block_frames") read_into(value, "block_frames", c.block_frames);
    else if (key == "max_frames") read_into(value, "max_frames", c.max_frames);
    else if (key == "target_frame_errors")
      read_into(value, "target_frame_errors", c.target_frame_errors);
    else if (key == "max_threads") read_into(value, "max_threads", c.max_threads);
  }
  if (c.pattern != "uniform" && c.pattern != "nonuniform") {
    throw std::invalid_argument("config: pattern must be \"uniform\" or \"nonuniform\"");
  }
  if (c.window != "hard" && c.window != "raised_cosine") {
    throw std::invalid_argument("config: window must be \"hard\" or \"raised_cosine\"");
  }
  if (c.labeling != "designed" && c.labeling != "random") {
    throw std::invalid_argument("config: labeling must be \"designed\" or \"random\"");
  }
  return c;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::string canonical_config_json(const SimConfig& c) { return to_json(c).dump(2) + "\n"; }

std::uint64_t config_hash(const SimConfig& c) { return fnv1a64(canonical_config_json(c)); }

ZeroCrossingPattern config_pattern(const SimConfig& c) {
  return make_pattern(c.pattern == "uniform" ? PatternKind::uniform : PatternKind::nonuniform,
                      c.n, c.lambda);
}

WindowSpec config_window(const SimConfig& c) {
  WindowSpec w;
  w.kind = c.window == "hard" ? WindowSpec::Kind::hard : WindowSpec::Kind::raised_cosine;
  w.alpha = c.alpha;
  return w;
}

TraceOptions config_trace(const SimConfig& c) {
  TraceOptions t;
  t.trace_points_per_interval = c.trace_ppi;
  t.quad_panels_per_subinterval = c.quad_panels;
  t.product_depth = c.product_depth;
  return t;
}

SelectionOptions config_selection(const SimConfig& c) {
  SelectionOptions s;
  s.eta = c.eta;
  s.eta_slack = c.eta_slack;
  s.max_bisect = c.max_bisect;
  s.w_hi_factor = c.w_hi_factor;
  s.spectral.zero_pad_factor = c.zero_pad_factor;
  return s;
}

LabelingOptions config_labeling(const SimConfig& c) {
  LabelingOptions l;
  l.allow_greedy = c.allow_greedy;
  l.seed = c.label_seed;
  return l;
}

BicmOptions config_bicm(const SimConfig& c) {
  BicmOptions b;
  b.demod_iters = c.demod_iters;
  b.ldpc_iters = c.ldpc_iters;
  b.llr_clip = c.llr_clip;
  b.use_interleaver = c.use_interleaver;
  b.seed = c.sim_seed;
  b.block_frames = c.block_frames;
  b.max_frames = c.max_frames;
  b.target_frame_errors = c.target_frame_errors;
  b.max_threads = static_cast<unsigned>(c.max_threads < 0 ? 0 : c.max_threads);
  return b;
}

double config_energy(const SimConfig& c) {
  return c.energy > 0.0 ? c.energy : c.kappa * c.t_nyq;
}

}  // namespace zcq
