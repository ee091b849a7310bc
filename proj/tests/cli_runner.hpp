#pragma once

// Runs the installed command-line binary in a child process and captures
// its standard output and exit status.

#include <sys/wait.h>

#include <cstdio>
#include <string>
#include <vector>

#ifndef HYPKERN_CLI_PATH
#error "HYPKERN_CLI_PATH must name the hypkern binary"
#endif

namespace clirun {

struct Result {
  int status = -1;
  std::string out;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

inline Result run(const std::vector<std::string>& args) {
  std::string cmd = quote(HYPKERN_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace clirun
