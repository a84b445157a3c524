#include <cstdio>
#include <fstream>
#include <ostream>

#include "colsim/experiments.hpp"

namespace colsim {

namespace {

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string real(const std::optional<double>& v) { return v ? real(*v) : std::string{}; }

void append_mode(std::vector<std::string>& fields, const std::optional<ModeResult>& m) {
  if (!m) {
    fields.insert(fields.end(), 5, std::string{});
    return;
  }
  fields.push_back(real(m->J_h_energy));
  fields.push_back(real(m->J_h_ancilla));
  fields.push_back(real(m->W_sw));
  fields.push_back(std::to_string(m->rounds_used));
  fields.push_back(m->converged ? "1" : "0");
}

}  // namespace

std::vector<std::string> csv_header() {
  return {"series_index",      "sweep_index",      "omega0",           "omega1",
          "omega2",            "delta",            "gamma",            "tau",
          "T1",                "T2",               "sys_coupling",     "bath_coupling",
          "full_J_h_energy",   "full_J_h_ancilla", "full_W_sw",        "full_rounds",
          "full_converged",    "local_J_h_energy", "local_J_h_ancilla", "local_W_sw",
          "local_rounds",      "local_converged",  "trace_distance",   "discord",
          "full_J_h_reversed", "rectification"};
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  auto write_line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out << ',';
      out << fields[k];
    }
    out << '\n';
  };
  write_line(csv_header());
  for (const auto& row : rows) {
    const auto& p = row.params;
    std::vector<std::string> fields{
        std::to_string(row.series_index), std::to_string(row.sweep_index),
        real(p.omega0), real(p.omega1), real(p.omega2), real(p.delta), real(p.gamma),
        real(p.tau), real(p.T1), real(p.T2), std::string(to_string(p.sys_coupling)),
        std::string(to_string(p.bath_coupling))};
    append_mode(fields, row.full);
    append_mode(fields, row.local);
    fields.push_back(real(row.trace_distance));
    fields.push_back(real(row.discord));
    fields.push_back(real(row.J_h_reversed));
    fields.push_back(real(row.rectification));
    write_line(fields);
  }
  if (!out) throw std::runtime_error("emit_csv: write failed");
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& destination) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  std::ofstream out(destination);
  if (!out) throw std::runtime_error("emit_csv: cannot write " + destination.string());
  emit_csv(rows, static_cast<std::ostream&>(out));
}

}  // namespace colsim
