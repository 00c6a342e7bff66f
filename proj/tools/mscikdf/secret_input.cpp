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

#include "secret_input.hpp"

#include <fcntl.h>
#include <termios.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

namespace mscikdf::cli {

namespace {

SecretString read_all(int fd, const std::string& what) {
  SecretString out;
  char buf[512];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n == 0) break;
    if (n < 0) {
      if (errno == EINTR) continue;
      secure_wipe(buf, sizeof buf);
      throw SourceError("cannot read " + what + ": " + std::strerror(errno));
    }
    out.append(buf, static_cast<std::size_t>(n));
  }
  secure_wipe(buf, sizeof buf);
  return out;
}

void trim(SecretString& s) {
  static constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kSpace.data(), 0, kSpace.size());
  if (first == SecretString::npos) {
    s.clear();
    return;
  }
  const auto last = s.find_last_not_of(kSpace.data(), SecretString::npos, kSpace.size());
  s = s.substr(first, last - first + 1);
}

void strip_line_ending(SecretString& s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

// Reads one line from /dev/tty with echo disabled.
SecretString prompt(const char* label) {
  const int tty = ::open("/dev/tty", O_RDWR | O_CLOEXEC);
  if (tty < 0) throw MissingSource(std::string("cannot open terminal to prompt for ") + label);
  termios old{};
  const bool have_attr = ::tcgetattr(tty, &old) == 0;
  if (have_attr) {
    termios quiet = old;
    quiet.c_lflag &= static_cast<tcflag_t>(~ECHO);
    ::tcsetattr(tty, TCSAFLUSH, &quiet);
  }
  const std::string text = std::string(label) + ": ";
  [[maybe_unused]] const auto w = ::write(tty, text.data(), text.size());

  SecretString line;
  char c;
  while (::read(tty, &c, 1) == 1 && c != '\n') line.push_back(c);
  c = 0;

  if (have_attr) ::tcsetattr(tty, TCSAFLUSH, &old);
  [[maybe_unused]] const auto nl = ::write(tty, "\n", 1);
  ::close(tty);
  strip_line_ending(line);
  return line;
}

SecretString from_env(const char* name, bool& found) {
  const char* v = std::getenv(name);
  found = v != nullptr;
  return found ? SecretString(v) : SecretString();
}

}  // namespace

SecretString read_mnemonic(const MnemonicSource& source) {
  SecretString out;
  if (source.fd) {
    out = read_all(*source.fd, "mnemonic from fd " + std::to_string(*source.fd));
  } else if (source.file) {
    const int fd = ::open(source.file->c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) throw SourceError("cannot open " + *source.file + ": " + std::strerror(errno));
    try {
      out = read_all(fd, *source.file);
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
  } else {
    bool found = false;
    out = from_env(kMnemonicEnv, found);
    if (!found) {
      out = ::isatty(STDIN_FILENO) ? prompt("mnemonic") : read_all(STDIN_FILENO, "mnemonic from stdin");
    }
  }
  trim(out);
  return out;
}

SecretString read_passphrase(const PassphraseSource& source) {
  if (source.fd) {
    SecretString out = read_all(*source.fd, "passphrase from fd " + std::to_string(*source.fd));
    strip_line_ending(out);
    return out;
  }
  bool found = false;
  SecretString out = from_env(kPassphraseEnv, found);
  if (found) return out;
  if (!::isatty(STDIN_FILENO)) {
    throw MissingSource(
        "no passphrase source: stdin is not a terminal; use --passphrase-fd or " +
        std::string(kPassphraseEnv));
  }
  return prompt("passphrase");
}

}  // namespace mscikdf::cli
