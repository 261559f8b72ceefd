// Copyright 2026 The hubvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cost/run_log.hpp"

#include <sstream>

#include "util/errors.hpp"
#include "util/format.hpp"

namespace hubvqe {

std::string format_record(const RunRecord& r, bool with_iteration) {
  std::string line = std::to_string(r.iter);
  line += ',';
  line += format_real(r.value);
  line += ",\"";
  line += format_param_list(r.params);
  line += "\",";
  line += format_real(r.exact_value);
  line += ',';
  line += std::to_string(r.nmeas);
  line += ',';
  line += format_real(round_to(r.time, 6));
  if (with_iteration) {
    line += ',';
    line += std::to_string(r.iteration);
  }
  return line;
}

static std::string header_line(bool with_iteration) {
  std::string h = kRunCsvHeader;
  if (with_iteration) {
    h += ',';
    h += kIterationColumn;
  }
  return h;
}

void write_csv(const std::vector<RunRecord>& records, const std::string& path, bool with_iteration) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << header_line(with_iteration) << '\n';
  for (const auto& r : records) out << format_record(r, with_iteration) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

namespace {

std::int64_t parse_int(const std::string& s, std::int64_t lineno) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + s + "'", lineno);
  }
}

RunRecord parse_line(const std::string& line, bool with_iteration, std::int64_t lineno) {
  const auto q1 = line.find('"');
  const auto q2 = q1 == std::string::npos ? std::string::npos : line.find('"', q1 + 1);
  if (q2 == std::string::npos) throw ParseError("params field must be quoted", lineno);
  const auto head = split(std::string_view(line).substr(0, q1), ',');
  if (head.size() != 3 || !head[2].empty()) throw ParseError("expected iter,value before params", lineno);
  std::string_view tail = std::string_view(line).substr(q2 + 1);
  if (tail.empty() || tail.front() != ',') throw ParseError("missing columns after params", lineno);
  const auto rest = split(tail.substr(1), ',');
  const std::size_t expected = with_iteration ? 4 : 3;
  if (rest.size() != expected) throw ParseError("wrong number of columns", lineno);

  RunRecord r;
  try {
    r.iter = parse_int(trim(head[0]), lineno);
    r.value = parse_real(head[1]);
    r.params = parse_param_list(std::string_view(line).substr(q1 + 1, q2 - q1 - 1));
    r.exact_value = parse_real(rest[0]);
    r.nmeas = parse_int(trim(rest[1]), lineno);
    r.time = parse_real(rest[2]);
    if (with_iteration) r.iteration = parse_int(trim(rest[3]), lineno);
  } catch (const ParseError& e) {
    if (e.line() > 0) throw;
    throw ParseError(e.what(), lineno);
  }
  return r;
}

}  // namespace

RunCsv read_run_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  RunCsv out;
  std::string line;
  std::int64_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("# end", 0) == 0) {
        out.complete = true;
        out.end_note = trim(std::string_view(line).substr(5));
      }
      continue;
    }
    if (!header_seen) {
      if (line == header_line(false)) {
        out.has_iteration = false;
      } else if (line == header_line(true)) {
        out.has_iteration = true;
      } else {
        throw ParseError("unexpected header '" + line + "'", lineno);
      }
      header_seen = true;
      continue;
    }
    out.records.push_back(parse_line(line, out.has_iteration, lineno));
  }
  if (!header_seen) throw ParseError("missing header", lineno + 1);
  return out;
}

std::vector<RunRecord> read_csv(const std::string& path) { return read_run_csv(path).records; }

bool run_file_complete(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  try {
    return read_run_csv(path).complete;
  } catch (const std::exception&) {
    return false;
  }
}

CsvRunSink::CsvRunSink(const std::string& path, bool with_iteration)
    : out_(path, std::ios::trunc), with_iteration_(with_iteration) {
  if (!out_) throw IoError("cannot write " + path);
  out_ << header_line(with_iteration) << '\n';
  out_.flush();
}

void CsvRunSink::append(const RunRecord& r) {
  out_ << format_record(r, with_iteration_) << '\n';
  out_.flush();
}

void CsvRunSink::finish(const std::string& note) {
  out_ << "# end " << note << '\n';
  out_.flush();
  if (!out_) throw IoError("failed to finalise run file");
}

}  // namespace hubvqe
