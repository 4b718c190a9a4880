#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace testutil {

namespace fs = std::filesystem;

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command, capturing stdout. stderr passes through to the test
// runner's stderr where it is visible on failure.
inline CmdResult run_cmd(const std::string& cmd) {
  CmdResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status))
    r.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    r.exit_code = 128 + WTERMSIG(status);
  return r;
}

inline std::string cli_path() {
#ifdef ACM_CLI_PATH
  return ACM_CLI_PATH;
#else
  throw std::runtime_error("ACM_CLI_PATH not defined");
#endif
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline bool files_equal(const fs::path& a, const fs::path& b) { return slurp(a) == slurp(b); }

// Fresh scratch directory under the current working directory.
inline fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::path("test_tmp") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Extracts the number following "key=" in a tool's stdout.
inline double parse_kv(const std::string& text, const std::string& key) {
  const std::string needle = key + "=";
  const size_t pos = text.find(needle);
  if (pos == std::string::npos) throw std::runtime_error("missing '" + needle + "' in: " + text);
  return std::strtod(text.c_str() + pos + needle.size(), nullptr);
}

inline int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace testutil
