// Copyright 2026 The mscikdf Authors
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

// Minimal fork/exec runner for tests that drive binaries as subprocesses.

#ifndef MSCIKDF_TESTS_SUBPROCESS_HPP
#define MSCIKDF_TESTS_SUBPROCESS_HPP

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

extern char** environ;

namespace mscikdf::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

struct RunOptions {
  /// Piped to stdin; /dev/null when unset.
  std::optional<std::string> stdin_text;
  /// Extra descriptors in the child, each fed from a pipe.
  std::map<int, std::string> fds;
  /// Set (or with nullopt, removed) in the child environment.
  std::map<std::string, std::optional<std::string>> env;
  /// Remove every MSCIKDF_* variable first.
  bool clean_env = true;
};

namespace detail {

inline void write_all(int fd, const std::string& s) {
  std::size_t off = 0;
  while (off < s.size()) {
    const ssize_t n = ::write(fd, s.data() + off, s.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;
    }
    off += static_cast<std::size_t>(n);
  }
}

// Pipe pre-filled with `data`; returns the read end. Fine for the small
// payloads tests use (well under the pipe buffer).
inline int filled_pipe(const std::string& data) {
  int p[2];
  if (::pipe(p) != 0) throw std::runtime_error("pipe");
  write_all(p[1], data);
  ::close(p[1]);
  return p[0];
}

}  // namespace detail

inline RunResult run_process(const std::string& path, const std::vector<std::string>& args,
                             const RunOptions& opts = {}) {
  std::vector<std::string> env_storage;
  for (char** e = environ; *e; ++e) {
    const std::string kv = *e;
    const std::string key = kv.substr(0, kv.find('='));
    if (opts.clean_env && key.rfind("MSCIKDF_", 0) == 0) continue;
    if (opts.env.count(key)) continue;
    env_storage.push_back(kv);
  }
  for (const auto& [k, v] : opts.env) {
    if (v) env_storage.push_back(k + "=" + *v);
  }
  std::vector<char*> envp;
  for (auto& s : env_storage) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<std::string> argv_storage{path};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  int out_pipe[2], err_pipe[2];
  if (::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0) throw std::runtime_error("pipe");
  const int in_fd = opts.stdin_text ? detail::filled_pipe(*opts.stdin_text)
                                    : ::open("/dev/null", O_RDONLY);
  std::map<int, int> extra;
  for (const auto& [target, data] : opts.fds) extra[target] = detail::filled_pipe(data);

  const pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork");
  if (pid == 0) {
    ::dup2(in_fd, 0);
    ::dup2(out_pipe[1], 1);
    ::dup2(err_pipe[1], 2);
    for (const auto& [target, src] : extra) ::dup2(src, target);
    ::execve(path.c_str(), argv.data(), envp.data());
    ::_exit(127);
  }
  ::close(in_fd);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  for (const auto& [target, src] : extra) ::close(src);

  RunResult r;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&r.out, &r.err};
  int open_count = 2;
  char buf[4096];
  while (open_count > 0) {
    if (::poll(fds, 2, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        ::close(fds[i].fd);
        fds[i].fd = -1;
        --open_count;
      }
    }
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return r;
}

}  // namespace mscikdf::testing

#endif  // MSCIKDF_TESTS_SUBPROCESS_HPP
