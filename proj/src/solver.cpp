#include "nfasat/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "nfasat/error.hpp"

namespace nfasat {

void SolverConfig::validate() const {
    const auto first = command.find(cnf_placeholder);
    if (first == std::string::npos)
        throw SolverError("solver command '" + command + "' lacks the " + std::string(cnf_placeholder) + " placeholder");
    if (command.find(cnf_placeholder, first + 1) != std::string::npos)
        throw SolverError("solver command '" + command + "' has more than one " + std::string(cnf_placeholder) +
                          " placeholder");
}

std::string default_solver_command(const std::string& fallback) {
    if (const char* env = std::getenv(solver_env_var); env && *env) return env;
    return fallback;
}

std::string_view status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::sat: return "sat";
        case SolveStatus::unsat: return "unsat";
        case SolveStatus::unknown: return "unknown";
    }
    return "?";
}

void Assignment::set(VarId v, bool value) {
    if (v < 1) throw SolverError("variable id must be positive");
    if (static_cast<std::size_t>(v) >= values_.size()) values_.resize(static_cast<std::size_t>(v) + 1, 0);
    if (values_[v] == 0) ++assigned_;
    values_[v] = value ? 1 : -1;
}

std::optional<bool> Assignment::value(VarId v) const {
    if (v < 1 || static_cast<std::size_t>(v) >= values_.size() || values_[v] == 0) return std::nullopt;
    return values_[v] > 0;
}

SolverOutcome parse_solver_output(std::string_view output, int exit_code) {
    SolverOutcome out;
    out.exit_code = exit_code;
    std::optional<SolveStatus> stated;
    bool model_lines = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < output.size()) {
        const std::size_t end = std::min(output.find('\n', pos), output.size());
        std::string_view line = output.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.starts_with("s ")) {
            const std::string_view word = line.substr(2);
            if (word == "SATISFIABLE")
                stated = SolveStatus::sat;
            else if (word == "UNSATISFIABLE")
                stated = SolveStatus::unsat;
            else
                stated = SolveStatus::unknown;
        } else if (line.starts_with("v ") || line == "v") {
            model_lines = true;
            std::string_view rest = line.substr(1);
            while (!rest.empty()) {
                const auto start = rest.find_first_not_of(" \t");
                if (start == std::string_view::npos) break;
                rest.remove_prefix(start);
                const auto stop = std::min(rest.find_first_of(" \t"), rest.size());
                const std::string_view tok = rest.substr(0, stop);
                rest.remove_prefix(stop);
                long long lit = 0;
                const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
                if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() ||
                    lit > std::numeric_limits<VarId>::max() || lit < -std::numeric_limits<VarId>::max())
                    throw SolverError("malformed model line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
                if (lit != 0) out.model.set(static_cast<VarId>(lit < 0 ? -lit : lit), lit > 0);
            }
        }
    }
    if (exit_code == 10)
        out.status = SolveStatus::sat;
    else if (exit_code == 20)
        out.status = SolveStatus::unsat;
    else
        out.status = stated.value_or(SolveStatus::unknown);

    if (out.status == SolveStatus::sat && (!model_lines || out.model.empty()))
        throw SolverError("solver reported SAT without 'v' model lines");
    if (out.status != SolveStatus::sat) out.model = {};
    return out;
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    return out + "'";
}

class Pipe {
public:
    Pipe() {
        if (::pipe(fds_.data()) != 0) throw SolverError(std::string("pipe failed: ") + std::strerror(errno));
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    int read_end() const { return fds_[0]; }
    int write_end() const { return fds_[1]; }
    void close_read() { close(0); }
    void close_write() { close(1); }

private:
    void close(int i) {
        if (fds_[i] >= 0) ::close(fds_[i]);
        fds_[i] = -1;
    }
    std::array<int, 2> fds_{-1, -1};
};

}  // namespace

SolverOutcome run_solver(const std::filesystem::path& cnf, const SolverConfig& cfg) {
    cfg.validate();
    if (!std::filesystem::exists(cnf)) throw SolverError("CNF file '" + cnf.string() + "' does not exist");
    if (cfg.time_limit && *cfg.time_limit <= 0) {
        SolverOutcome out;
        out.timed_out = true;
        out.detail = "time limit is zero";
        return out;
    }

    std::string command = cfg.command;
    command.replace(command.find(cnf_placeholder), cnf_placeholder.size(), shell_quote(cnf.string()));

    Pipe out_pipe, err_pipe;
    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = ::fork();
    if (pid < 0) throw SolverError(std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        ::setpgid(0, 0);
        ::dup2(out_pipe.write_end(), STDOUT_FILENO);
        ::dup2(err_pipe.write_end(), STDERR_FILENO);
        const int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
        ::close(out_pipe.read_end());
        ::close(err_pipe.read_end());
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    ::setpgid(pid, pid);
    out_pipe.close_write();
    err_pipe.close_write();

    std::string captured, errors;
    std::array<pollfd, 2> fds{pollfd{out_pipe.read_end(), POLLIN, 0}, pollfd{err_pipe.read_end(), POLLIN, 0}};
    bool timed_out = false;
    char buf[1 << 16];
    int open_fds = 2;
    while (open_fds > 0) {
        int wait_ms = -1;
        if (cfg.time_limit) {
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const double remaining = *cfg.time_limit - elapsed;
            if (remaining <= 0) {
                timed_out = true;
                break;
            }
            wait_ms = static_cast<int>(remaining * 1000.0) + 1;
        }
        const int ready = ::poll(fds.data(), fds.size(), wait_ms);
        if (ready < 0) {
            if (errno == EINTR) continue;
            ::kill(-pid, SIGKILL);
            ::waitpid(pid, nullptr, 0);
            throw SolverError(std::string("poll failed: ") + std::strerror(errno));
        }
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            const ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
            if (got > 0) {
                (i == 0 ? captured : errors).append(buf, static_cast<std::size_t>(got));
            } else if (got == 0 || errno != EINTR) {
                fds[i].fd = -1;
                --open_fds;
            }
        }
    }
    if (timed_out) ::kill(-pid, SIGKILL);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (timed_out) {
        SolverOutcome out;
        out.timed_out = true;
        out.wall_seconds = wall;
        out.detail = "time limit of " + std::to_string(*cfg.time_limit) + "s reached";
        return out;
    }
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (exit_code == 127 || exit_code == 126)
        throw SolverError("could not start solver '" + cfg.command + "': " +
                          (errors.empty() ? "command not found" : errors.substr(0, 200)));
    SolverOutcome out = parse_solver_output(captured, exit_code);
    out.wall_seconds = wall;
    if (!WIFEXITED(status)) out.detail = "solver terminated by signal " + std::to_string(WTERMSIG(status));
    return out;
}

Nfa decode_nfa(const Assignment& model, const VarMap& vars) {
    const int k = vars.states();
    const int n = vars.alphabet_size();
    auto need = [&](VarId v) {
        const auto value = model.value(v);
        if (!value) throw Error("model does not assign fixed variable " + std::to_string(v));
        return *value;
    };
    Nfa a(k, n);
    for (State j = 1; j <= k; ++j) a.set_final(j, need(vars.final_var(j)));
    for (SymbolId s = 1; s <= n; ++s)
        for (State i = 1; i <= k; ++i)
            for (State j = 1; j <= k; ++j) a.set_transition(s, i, j, need(vars.delta_var(s, i, j)));
    return a;
}

VerifyReport verify(const Nfa& a, const LabeledSample& s) { return {misclassified(a, s)}; }

std::string describe(const VerifyReport& r, const LabeledSample& s) {
    if (r.passed()) return "all words classified correctly";
    std::string out;
    for (const Misclassification& m : r.errors)
        out += (m.positive ? "rejected positive word '" : "accepted negative word '") + s.word_text(m.word) + "'\n";
    return out;
}

}  // namespace nfasat
