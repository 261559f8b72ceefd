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

#include <csignal>
#include <cstdio>
#include <sstream>
#include <string>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "opt/optimizer.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"

namespace hubvqe {

namespace {

// Child process connected by two pipes. The destructor closes both ends,
// which the child sees as EOF, then reaps it.
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) throw OptimizerFailure("external: pipe() failed");
    pid_ = fork();
    if (pid_ < 0) throw OptimizerFailure("external: fork() failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    out_ = fdopen(to_child[1], "w");
    in_ = fdopen(from_child[0], "r");
    if (!out_ || !in_) throw OptimizerFailure("external: fdopen() failed");
  }
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;
  ~ChildProcess() {
    if (out_) std::fclose(out_);
    if (in_) std::fclose(in_);
    if (pid_ > 0) {
      int status = 0;
      if (waitpid(pid_, &status, WNOHANG) == 0) {
        kill(pid_, SIGTERM);
        waitpid(pid_, &status, 0);
      }
    }
  }

  void send(const std::string& line) {
    if (std::fputs((line + "\n").c_str(), out_) < 0 || std::fflush(out_) != 0) {
      throw OptimizerFailure("external: process closed its input");
    }
  }

  bool receive(std::string& line) {
    line.clear();
    int c;
    while ((c = std::fgetc(in_)) != EOF && c != '\n') line.push_back(static_cast<char>(c));
    return c != EOF || !line.empty();
  }

 private:
  pid_t pid_ = -1;
  std::FILE* out_ = nullptr;
  std::FILE* in_ = nullptr;
};

std::string join(std::span<const double> x) {
  std::string s;
  for (double v : x) s += " " + format_real(v);
  return s;
}

}  // namespace

// Line protocol, one message per line:
//   to process:   "start <n> <x0...>", "value <f> <stderr>", "stop"
//   from process: "ask <x...>" (n numbers), "iteration <k>", "done"
std::int64_t external_optimizer(OptimizerContext& ctx, const HyperparameterSet&) {
  if (ctx.external_command.empty()) throw OptimizerFailure("external: no command configured");
  std::signal(SIGPIPE, SIG_IGN);
  ChildProcess child(ctx.external_command);
  const std::size_t n = ctx.x0.size();
  child.send("start " + std::to_string(n) + join(ctx.x0));
  ctx.cost.set_iteration(0);
  std::string line;
  std::int64_t lineno = 0;
  try {
    while (child.receive(line)) {
      ++lineno;
      std::istringstream ss(line);
      std::string verb;
      ss >> verb;
      if (verb == "ask") {
        std::vector<double> x;
        std::string tok;
        try {
          while (ss >> tok) x.push_back(parse_real(tok));
        } catch (const ParseError&) {
          throw OptimizerFailure("external: malformed number in line " + std::to_string(lineno) + ": '" + line + "'");
        }
        if (x.size() != n) {
          throw OptimizerFailure("external: expected " + std::to_string(n) + " parameters in line " +
                                 std::to_string(lineno) + ": '" + line + "'");
        }
        const EnergyEstimate e = ctx.cost(x);
        child.send("value " + format_real(e.value) + " " + format_real(e.std_error));
      } else if (verb == "iteration") {
        long long k = -1;
        if (!(ss >> k) || k < 0) throw OptimizerFailure("external: malformed iteration line " + std::to_string(lineno));
        ctx.cost.set_iteration(k);
      } else if (verb == "done") {
        return ctx.cost.iteration() + 1;
      } else {
        throw OptimizerFailure("external: unknown reply in line " + std::to_string(lineno) + ": '" + line + "'");
      }
    }
  } catch (const BudgetExhausted&) {
    try {
      child.send("stop");
    } catch (const OptimizerFailure&) {
    }
    throw;
  }
  throw OptimizerFailure("external: process exited without 'done'");
}

}  // namespace hubvqe
