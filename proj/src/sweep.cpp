#include "pingpong/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "pingpong/protocol.hpp"

namespace pingpong {

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ComplexMatrix parse_operator(const nlohmann::json& op, Eigen::Index dim) {
  const auto parse_entry = [](const nlohmann::json& entry) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw std::runtime_error("channel spec: matrix entries must be [re, im] pairs");
    }
    return Complex(entry[0].get<double>(), entry[1].get<double>());
  };

  if (!op.is_array() || op.empty()) {
    throw std::runtime_error("channel spec: operator must be a nonempty array");
  }
  ComplexMatrix m(dim, dim);
  if (op[0].is_array() && !op[0].empty() && op[0][0].is_array()) {
    // Nested form: rows of [re, im] pairs.
    if (static_cast<Eigen::Index>(op.size()) != dim) {
      throw std::runtime_error("channel spec: operator row count does not match dim");
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (static_cast<Eigen::Index>(op[i].size()) != dim) {
        throw std::runtime_error("channel spec: operator column count does not match dim");
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        m(i, j) = parse_entry(op[i][j]);
      }
    }
    return m;
  }
  // Flat form: dim*dim entries in row-major order.
  if (static_cast<Eigen::Index>(op.size()) != dim * dim) {
    throw std::runtime_error("channel spec: flat operator must have dim*dim entries");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = parse_entry(op[i * dim + j]);
    }
  }
  return m;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("linspace: count must be positive");
  }
  std::vector<double> values;
  values.reserve(count);
  if (count == 1) {
    values.push_back(lo);
    return values;
  }
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(count - 1));
  }
  values.back() = hi;
  return values;
}

SweepRow evaluate_point(const NoiseModel& noise, double r_label) {
  const ProtocolState start = initial_state(false);
  const ProtocolState travelled = forward_leg(start, noise);
  const ProtocolState intercepted = eve_intervene(travelled, EveAction::absent());

  SweepRow row;
  row.r = r_label;
  row.p_ec = control_mode_error(intercepted);

  const ProtocolState received0 = return_leg(encode(intercepted, 0), noise);
  const ProtocolState received1 = return_leg(encode(intercepted, 1), noise);
  const auto [rho0, rho1] = bob_states(received0, received1);
  const DiscriminationResult result = discriminate(rho0, rho1);
  row.qber = result.qber;
  row.qloss = result.qloss;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.grid.empty()) {
    throw std::invalid_argument("run_sweep: grid is empty");
  }
  if (cfg.grid_kind == GridKind::control_error &&
      cfg.channel.kind() != NoiseModel::Kind::depolarizing) {
    throw std::invalid_argument(
        "run_sweep: a P_EC grid is only invertible for the depolarizing channel");
  }
  for (double v : cfg.grid) {
    const double hi = cfg.grid_kind == GridKind::reliability ? 1.0 : 0.5;
    if (!(v >= 0.0 && v <= hi)) {
      throw std::invalid_argument("run_sweep: grid value " + format_number(v) +
                                  " outside [0, " + format_number(hi) + "]");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(cfg.grid.size());
  for (double v : cfg.grid) {
    const double r = cfg.grid_kind == GridKind::reliability ? v : 1.0 - 2.0 * v;
    const NoiseModel noise = cfg.channel.kind() == NoiseModel::Kind::depolarizing
                                 ? NoiseModel::depolarizing(r)
                                 : cfg.channel;
    rows.push_back(evaluate_point(noise, r));
  }
  return rows;
}

std::string format_rows_csv(const std::vector<SweepRow>& rows) {
  std::string out = "r,p_ec,qber,qloss\n";
  for (const auto& row : rows) {
    out += format_number(row.r) + "," + format_number(row.p_ec) + "," +
           format_number(row.qber) + "," + format_number(row.qloss) + "\n";
  }
  return out;
}

std::string format_rows_json(const std::vector<SweepRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "  {\"r\": " + format_number(rows[i].r) +
           ", \"p_ec\": " + format_number(rows[i].p_ec) +
           ", \"qber\": " + format_number(rows[i].qber) +
           ", \"qloss\": " + format_number(rows[i].qloss) + "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

void emit(const std::vector<SweepRow>& rows, const SweepConfig& cfg) {
  if (rows.empty()) {
    throw std::invalid_argument("emit: no rows to write");
  }
  const std::string text = cfg.format == OutputFormat::csv ? format_rows_csv(rows)
                                                           : format_rows_json(rows);
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) {
    throw IoError("emit: cannot open '" + cfg.output_path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("emit: write to '" + cfg.output_path + "' failed");
  }
}

NoiseModel parse_channel_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("channel spec: JSON parse failure: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("operators")) {
    throw std::runtime_error("channel spec: expected an object with 'dim' and 'operators'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw std::runtime_error("channel spec: 'dim' must be a positive integer");
  }
  const auto dim = doc["dim"].get<Eigen::Index>();
  const auto& ops = doc["operators"];
  if (!ops.is_array() || ops.empty()) {
    throw std::runtime_error("channel spec: 'operators' must be a nonempty array");
  }
  std::vector<ComplexMatrix> operators;
  operators.reserve(ops.size());
  for (const auto& op : ops) {
    operators.push_back(parse_operator(op, dim));
  }
  // KrausChannel reports the trace-preservation deviation if it is violated.
  return NoiseModel::custom(KrausChannel(std::move(operators)));
}

NoiseModel load_channel_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("load_channel_spec: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("load_channel_spec: read from '" + path + "' failed");
  }
  return parse_channel_spec(buffer.str());
}

}  // namespace pingpong
