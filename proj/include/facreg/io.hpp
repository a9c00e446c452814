#pragma once

#include <string>
#include <vector>

#include "facreg/montecarlo.hpp"
#include "facreg/panel.hpp"

namespace facreg {

// CSV description for a panel on disk. time_rows files store one time
// point per line with series as columns (the natural layout for returns
// data); series_rows files store the in-memory orientation directly.
struct PanelFile {
  enum class Orientation { series_rows, time_rows };
  std::string path;
  Orientation orientation = Orientation::time_rows;
  bool header = true;
  char delimiter = ',';
};

// Reads a rectangular numeric CSV into a Panel. With a header, the header
// cells become series labels (time_rows) or time labels (series_rows); a
// leading header cell named "time" or left empty marks the first column as
// labels for the other axis.
Panel read_panel(const PanelFile& file);

// Writes with up to 17 significant digits so a read-back reproduces the
// values exactly. Unlabeled series get generated headers s1..sp.
void write_panel(const Panel& panel, const PanelFile& file);

// Plain numeric matrix helpers (no header, rows = matrix rows).
Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const Matrix& m, const std::string& path);

// Two-column (index, value) CSV for spectra and ratio scans; index is
// 1-based.
void write_indexed_csv(const Vector& v, const std::string& path,
                       const std::string& value_name);

// Parses the JSON experiment configuration (grammar documented in
// README.md): either one experiment object or {"experiments": [...]},
// with strict unknown-key rejection and module defaults filled in.
std::vector<ExperimentSpec> read_spec(const std::string& path);

// Results table with the fixed column schema:
// design, delta, estimator, p, T, replicates, freq_r_correct, d2_min,
// d2_q1, d2_median, d2_q3, d2_max, coef_err_median, errors_count,
// wall_time_s.
void write_results_table(const std::vector<CellResult>& cells,
                         const std::string& path);

// Long-form five-number summaries, one row per (cell, metric).
void write_boxplot_summaries(const std::vector<CellResult>& cells,
                             const std::string& path);

}  // namespace facreg
