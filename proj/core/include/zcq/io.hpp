#pragma once

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "zcq/config.hpp"
#include "zcq/dmc.hpp"
#include "zcq/labeling.hpp"
#include "zcq/ldpc.hpp"
#include "zcq/waveforms.hpp"

namespace zcq {

// Versioned JSON; doubles use shortest round-trip formatting, so reloads are
// bit exact.
void save_waveform_set(const WaveformSet& set, const std::string& path);
WaveformSet load_waveform_set(const std::string& path);

// Binary, magic "ZCQDMC01".
void save_dmc(const DmcModel& model, const std::string& path);
DmcModel load_dmc(const std::string& path);

// JSON metadata next to a sparse binary row file (same stem, ".h.bin").
void save_ldpc(const LdpcCode& code, const std::string& path);
LdpcCode load_ldpc(const std::string& path);

void save_labeling(const Labeling& lab, const std::string& path);
Labeling load_labeling(const std::string& path);

// One header line, %.17g cells.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string> columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::span<const double> values);

 private:
  std::FILE* f_ = nullptr;
  std::size_t n_cols_ = 0;
};

std::string version_string();
std::string git_rev();

// JSON sidecar describing one CLI run: tool version, revision, the full
// canonical config with its hash, the command line and runtime.
void write_run_sidecar(const std::string& path, const SimConfig& config,
                       const std::string& command, double runtime_s,
                       const std::vector<std::string>& outputs);

}  // namespace zcq
