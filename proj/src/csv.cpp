#include "rivalry/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace rivalry {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << 't';
  for (const char* label : state_labels(traj.model.kind())) os << ',' << label;
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << format_double(traj.times[i]);
    for (double v : traj.states[i]) os << ',' << format_double(v);
    os << '\n';
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_double(const std::string& field, std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    std::ostringstream os;
    os << "line " << line_no << ": '" << field << "' is not a number";
    throw ConfigError(os.str());
  }
  return v;
}

}  // namespace

CsvTrajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(is, line))
    throw ConfigError("line 1: missing CSV header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "t")
    throw ConfigError("line 1: header must be t,<var labels...>");

  CsvTrajectory out;
  out.labels.assign(header.begin() + 1, header.end());
  out.columns.resize(out.labels.size());

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << header.size()
         << " fields, got " << fields.size();
      throw ConfigError(os.str());
    }
    out.t.push_back(parse_double(fields[0], line_no));
    for (std::size_t c = 0; c < out.columns.size(); ++c)
      out.columns[c].push_back(parse_double(fields[c + 1], line_no));
  }
  if (out.t.empty()) throw ConfigError("line 2: no data rows");
  return out;
}

CsvTrajectory read_trajectory_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  return read_trajectory_csv(is);
}

void write_intervals_csv(std::span<const DominanceInterval> intervals,
                         std::ostream& os) {
  os << "channel,start_ms,end_ms,complete\n";
  for (const DominanceInterval& iv : intervals) {
    os << iv.channel << ',' << format_double(iv.start) << ','
       << format_double(iv.end) << ',' << (iv.complete ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  os << "param,replicate,regime,mean_dur_1,mean_dur_2,alt_rate,predom_1,"
        "predom_2\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const SweepRow& row : result.rows) {
    for (std::size_t k = 0; k < row.replicates.size(); ++k) {
      const ReplicateOutcome& rep = row.replicates[k];
      os << format_double(row.param) << ',' << k << ',';
      if (rep.report) {
        const DominanceReport& r = *rep.report;
        os << regime_label(r.regime) << ',' << opt(r.mean_duration_1) << ','
           << opt(r.mean_duration_2) << ',' << format_double(r.alternation_rate)
           << ',' << format_double(r.predominance_1) << ','
           << format_double(r.predominance_2);
      } else {
        os << "error,,,,,";
      }
      os << '\n';
    }
  }
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  write_sweep_csv(result, os);
  return os.str();
}

}  // namespace rivalry
