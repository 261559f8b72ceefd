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

#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace hubvqe {

struct RunRecord {
  std::int64_t iter = 0;
  double value = 0.0;
  std::vector<double> params;  // rounded to 6 decimals on write
  double exact_value = std::numeric_limits<double>::quiet_NaN();
  std::int64_t nmeas = 0;
  double time = 0.0;
  std::int64_t iteration = -1;  // optimizer iteration, -1 when not tracked
};

inline constexpr const char* kRunCsvHeader = "iter,value,params,exact value,nmeas,time";
inline constexpr const char* kIterationColumn = "iteration";

std::string format_record(const RunRecord& r, bool with_iteration);

// Header plus one line per record; `with_iteration` appends the iteration column.
void write_csv(const std::vector<RunRecord>& records, const std::string& path, bool with_iteration = false);

struct RunCsv {
  std::vector<RunRecord> records;
  bool has_iteration = false;
  bool complete = false;  // end marker present
  std::string end_note;   // text after the end marker
};
// Lines beginning with '#' are comments; `# end` marks a finished run.
RunCsv read_run_csv(const std::string& path);
std::vector<RunRecord> read_csv(const std::string& path);
bool run_file_complete(const std::string& path);

class RunSink {
 public:
  virtual ~RunSink() = default;
  virtual void append(const RunRecord& r) = 0;
};

// Append-only CSV writer flushed after every row.
class CsvRunSink final : public RunSink {
 public:
  CsvRunSink(const std::string& path, bool with_iteration);
  void append(const RunRecord& r) override;
  // Writes the end marker with a free-form note.
  void finish(const std::string& note);

 private:
  std::ofstream out_;
  bool with_iteration_;
};

class MemoryRunSink final : public RunSink {
 public:
  void append(const RunRecord& r) override { records.push_back(r); }
  std::vector<RunRecord> records;
};

}  // namespace hubvqe
