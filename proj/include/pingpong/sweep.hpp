#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pingpong/channel.hpp"
#include "pingpong/discrimination.hpp"

namespace pingpong {

/// Filesystem-level failures (unreadable input, unwritable output), kept
/// apart from validation failures for exit-code mapping.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

/// Which quantity the grid enumerates: the channel reliability r, or the
/// control-mode failure probability P_EC (inverted to r = 1 - 2 P_EC; only
/// meaningful for the depolarizing model).
enum class GridKind { reliability, control_error };

struct SweepConfig {
  NoiseModel channel = NoiseModel::depolarizing(1.0);
  GridKind grid_kind = GridKind::reliability;
  std::vector<double> grid;  // nonempty; r in [0,1] or P_EC in [0,1/2]
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
};

struct SweepRow {
  double r = 0.0;
  double p_ec = 0.0;
  double qber = 0.0;
  double qloss = 0.0;
};

std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Evaluate the full protocol pipeline at every grid point: forward leg,
/// absent Eve, control-mode error, both encodings, return leg, Bob's state
/// pair, discrimination. Rows follow grid order. For the depolarizing kind
/// the grid supplies r; other channels are evaluated as configured and the
/// grid value is echoed in the r column.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// One full-pipeline evaluation with an explicit noise model.
SweepRow evaluate_point(const NoiseModel& noise, double r_label);

// Serialized forms; 12 significant digits, '\n' newlines, deterministic.
std::string format_rows_csv(const std::vector<SweepRow>& rows);
std::string format_rows_json(const std::vector<SweepRow>& rows);

/// Write rows to cfg.output_path in cfg.format.
void emit(const std::vector<SweepRow>& rows, const SweepConfig& cfg);

/// Parse and validate a channel-spec JSON document:
///   {"dim": d, "operators": [matrix, ...]}
/// where a matrix is either rows of [re, im] pairs or a flat row-major list
/// of d*d such pairs.
NoiseModel parse_channel_spec(const std::string& json_text);

/// parse_channel_spec on the contents of a file.
NoiseModel load_channel_spec(const std::string& path);

}  // namespace pingpong
