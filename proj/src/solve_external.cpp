#include <fcntl.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "krho/exact.hpp"

namespace krho {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::SolverError: return "solver-error";
  }
  return "unknown";
}

namespace {

bool lowercase_word_match(const std::string& line, const std::string& word) {
  std::string low;
  low.reserve(line.size());
  for (char c : line) low.push_back(static_cast<char>(std::tolower(c)));
  auto pos = low.find(word);
  if (pos == std::string::npos) return false;
  bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(low[pos - 1]));
  auto end = pos + word.size();
  bool right = end >= low.size() ||
               !std::isalnum(static_cast<unsigned char>(low[end]));
  return left && right;
}

bool parse_number(const std::string& tok, double& out) {
  char* endp = nullptr;
  out = std::strtod(tok.c_str(), &endp);
  return endp != tok.c_str() && *endp == '\0';
}

std::string replace_all(std::string s, const std::string& from,
                        const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::string tail_of_file(const std::string& path, std::size_t max_bytes) {
  std::ifstream is(path, std::ios::binary);
  if (!is.good()) return "";
  is.seekg(0, std::ios::end);
  auto size = static_cast<std::size_t>(is.tellg());
  auto start = size > max_bytes ? size - max_bytes : 0;
  is.seekg(static_cast<std::streamoff>(start));
  std::string out(size - start, '\0');
  is.read(out.data(), static_cast<std::streamsize>(out.size()));
  return out;
}

struct RunResult {
  bool timed_out = false;
  int exit_code = 0;
};

RunResult run_with_deadline(const std::string& cmd, const std::string& log,
                            int timeout_s) {
  pid_t pid = fork();
  require(pid >= 0, "fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    int fd = open(log.c_str(), O_CREAT | O_WRONLY | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, 1);
      dup2(fd, 2);
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::seconds(timeout_s);
  RunResult r;
  while (true) {
    int status = 0;
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
      return r;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      r.timed_out = true;
      return r;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

}  // namespace

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), "cannot read solution file " + path);
  SolutionFile sol;
  std::string line;
  while (std::getline(is, line)) {
    auto cut = line.find_first_of("#%\\");
    std::string payload = cut == std::string::npos ? line : line.substr(0, cut);
    std::string comment = cut == std::string::npos ? "" : line.substr(cut + 1);
    if (lowercase_word_match(payload, "infeasible") ||
        lowercase_word_match(comment, "infeasible"))
      sol.infeasible = true;

    std::istringstream ss(payload);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    double value = 0.0, index = 0.0;
    if (tok.size() == 2 && parse_number(tok[1], value) &&
        !parse_number(tok[0], index)) {
      sol.values[tok[0]] = value;
    } else if (tok.size() >= 3 && parse_number(tok[0], index) &&
               !parse_number(tok[1], value) && parse_number(tok[2], value)) {
      // solver styles that prepend a row index to "<name> <value>"
      sol.values[tok[1]] = value;
    }
  }
  return sol;
}

SolveOutcome solve_external(const IlpModel& model,
                            const std::string& solver_cmd, int timeout_s) {
  require(solver_cmd.find("{lp}") != std::string::npos &&
              solver_cmd.find("{sol}") != std::string::npos,
          "solver command must contain {lp} and {sol} placeholders");
  require(timeout_s >= 0, "timeout must be >= 0");

  namespace fs = std::filesystem;
  std::string tmpl = (fs::temp_directory_path() / "krho-XXXXXX").string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  require(mkdtemp(buf.data()) != nullptr, "cannot create temp directory");
  fs::path dir(buf.data());
  std::string lp = (dir / "model.lp").string();
  std::string solpath = (dir / "model.sol").string();
  std::string logpath = (dir / "solver.log").string();

  auto cleanup = [&] {
    std::error_code ec;
    fs::remove_all(dir, ec);
  };

  SolveOutcome out;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  };

  try {
    write_lp(model, lp);

    if (timeout_s == 0) {
      out.status = SolveStatus::Timeout;
      out.message = "timeout budget is zero";
      out.wall_time = elapsed();
      cleanup();
      return out;
    }

    if (model.col_count() == 0) {
      // nothing to decide (every node is isolated); skip the subprocess
      ViolationReport rep = verify_krho(model.graph, model.k, model.rho);
      require(rep.ok(), "internal error: empty model for a violated graph");
      out.status = SolveStatus::Optimal;
      out.objective = 0;
      out.shortcuts = ShortcutSet(model.graph.directed());
      out.wall_time = elapsed();
      cleanup();
      return out;
    }

    std::string cmd = replace_all(replace_all(solver_cmd, "{lp}", lp),
                                  "{sol}", solpath);
    RunResult run = run_with_deadline(cmd, logpath, timeout_s);
    out.wall_time = elapsed();

    if (run.timed_out) {
      out.status = SolveStatus::Timeout;
      out.message = "solver exceeded " + std::to_string(timeout_s) + " s";
      cleanup();
      return out;
    }

    if (!fs::exists(solpath)) {
      out.status = SolveStatus::SolverError;
      out.message = "no solution file (exit " +
                    std::to_string(run.exit_code) + "): " +
                    tail_of_file(logpath, 400);
      cleanup();
      return out;
    }

    SolutionFile sol = read_solution_file(solpath);
    if (sol.infeasible) {
      out.status = SolveStatus::Infeasible;
      out.message = "solver reported infeasible: some node cannot be brought "
                    "within reach (edges heavier than the distance between "
                    "their endpoints rule out the direct shortcut)";
      cleanup();
      return out;
    }
    if (sol.values.empty()) {
      out.status = SolveStatus::SolverError;
      out.message = "no variable assignments in solution file (exit " +
                    std::to_string(run.exit_code) + "): " +
                    tail_of_file(logpath, 400);
      cleanup();
      return out;
    }

    int purchased = 0;
    for (const ShortcutVar& v : model.shortcut_vars) {
      auto it = sol.values.find("sc_" + std::to_string(v.u) + "_" +
                                std::to_string(v.v));
      if (it != sol.values.end() && it->second >= 0.5) ++purchased;
    }
    ShortcutSet set = decode_shortcuts(model, sol.values);
    WeightedGraph patched = apply_shortcuts(model.graph, set);
    ViolationReport rep = verify_krho(patched, model.k, model.rho);
    if (!rep.ok()) {
      out.status = SolveStatus::SolverError;
      std::string nodes;
      for (std::size_t i = 0; i < rep.violators.size() && i < 8; ++i)
        nodes += (i ? "," : "") + std::to_string(rep.violators[i]);
      out.message = "decoded solution fails verification at nodes " + nodes;
      cleanup();
      return out;
    }

    out.status = SolveStatus::Optimal;
    out.objective = purchased;
    out.shortcuts = std::move(set);
    cleanup();
    return out;
  } catch (const Error& e) {
    out.status = SolveStatus::SolverError;
    out.message = e.what();
    out.wall_time = elapsed();
    cleanup();
    return out;
  }
}

}  // namespace krho
