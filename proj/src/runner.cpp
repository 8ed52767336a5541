#include "iospec/runner.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <optional>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace iospec {

ScriptedProgram ScriptedProgram::read(std::function<ScriptedProgram(const Integer&)> resume) {
  return ScriptedProgram(RequestInput{std::move(resume)});
}

ScriptedProgram ScriptedProgram::write(Integer value, std::function<ScriptedProgram()> next) {
  return ScriptedProgram(EmitOutput{std::move(value), std::move(next)});
}

ScriptedProgram ScriptedProgram::halt() { return ScriptedProgram(Halt{}); }

std::string_view exitKindName(ExitKind kind) {
  switch (kind) {
    case ExitKind::CleanHalt:
      return "CleanHalt";
    case ExitKind::TimedOut:
      return "TimedOut";
    case ExitKind::Crashed:
      return "Crashed";
    case ExitKind::ProtocolError:
      return "ProtocolError";
  }
  return "?";
}

std::string RunOutcome::describeExit() const {
  std::string out(exitKindName(exitKind));
  if (exitKind == ExitKind::Crashed) out += "(" + std::to_string(exitCode) + ")";
  if (!detail.empty()) out += "(" + detail + ")";
  return out;
}

RunOutcome runScripted(const ScriptedProgram& program, std::span<const Integer> inputs, std::size_t maxSteps) {
  RunOutcome outcome;
  ScriptedProgram state = program;
  for (std::size_t steps = 0;; ++steps) {
    if (steps == maxSteps) {
      outcome.exitKind = ExitKind::TimedOut;
      return outcome;
    }
    const auto& step = state.step();
    if (const auto* request = std::get_if<ScriptedProgram::RequestInput>(&step)) {
      if (outcome.consumedInputs == inputs.size()) {
        outcome.exitKind = ExitKind::ProtocolError;
        outcome.detail = "InputUnderflow";
        return outcome;
      }
      const Integer& v = inputs[outcome.consumedInputs++];
      outcome.trace.steps.push_back(TraceStep::in(v));
      state = request->resume(v);
    } else if (const auto* emit = std::get_if<ScriptedProgram::EmitOutput>(&step)) {
      outcome.trace.steps.push_back(TraceStep::out(emit->value));
      state = emit->next();
    } else {
      return outcome;
    }
  }
}

// --------------------------------------------------------------- subprocess

void SubprocessConfig::validate() const {
  if (executablePath.empty()) throw std::invalid_argument("no program given");
  if (quiescenceWindow.count() <= 0) throw std::invalid_argument("quiescence window must be positive");
  if (perRunTimeout <= quiescenceWindow) throw std::invalid_argument("timeout must exceed the quiescence window");
}

namespace {

using Clock = std::chrono::steady_clock;

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd& operator=(Fd&& other) noexcept {
    reset();
    fd_ = std::exchange(other.fd_, -1);
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  explicit operator bool() const { return fd_ >= 0; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct Pipe {
  Fd read;
  Fd write;
};

Pipe makePipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw SpawnError(std::string("pipe: ") + std::strerror(errno));
  return {Fd(fds[0]), Fd(fds[1])};
}

void setNonBlocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

int remainingMs(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left < 0 ? 0 : static_cast<int>(left);
}

std::optional<Integer> parseOutputLine(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  try {
    return parseInteger(line);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

bool isBlank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

class ChildSession {
 public:
  ChildSession(const SubprocessConfig& config, RunOutcome& outcome)
      : config_(config), outcome_(outcome), deadline_(Clock::now() + config.perRunTimeout) {
    spawn();
  }

  ~ChildSession() {
    if (!reaped_) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  enum class Pump { Quiet, Closed, Deadline, BadOutput };

  // Collects output until stdout stays silent for the quiescence window
  // (or, with untilClosed, until stdout is closed), or the deadline passes.
  Pump pump(bool untilClosed) {
    for (;;) {
      if (!stdout_ && !stderr_) return Pump::Closed;
      const int left = remainingMs(deadline_);
      if (left == 0) return Pump::Deadline;
      const int wait = untilClosed ? left : std::min(left, static_cast<int>(config_.quiescenceWindow.count()));
      pollfd fds[2];
      nfds_t count = 0;
      if (stdout_) fds[count++] = {stdout_.get(), POLLIN, 0};
      if (stderr_) fds[count++] = {stderr_.get(), POLLIN, 0};
      const int ready = ::poll(fds, count, wait);
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("poll: ") + std::strerror(errno));
      }
      if (ready == 0) {
        if (!untilClosed) return Pump::Quiet;
        continue;
      }
      if (stdout_ && !drain(stdout_, stdoutBuffer_, true)) return Pump::BadOutput;
      if (stderr_) drain(stderr_, outcome_.diagnostics, false);
      if (!stdout_) {
        if (!stdoutBuffer_.empty()) {
          protocolError("UnterminatedLine");
          return Pump::BadOutput;
        }
        return Pump::Closed;
      }
    }
  }

  bool exited() {
    if (reaped_) return true;
    int status = 0;
    const pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_) recordExit(status);
    return reaped_;
  }

  // false if the program no longer accepts input.
  bool send(const Integer& value) {
    const std::string line = toString(value) + "\n";
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n = ::write(stdin_.get(), line.data() + written, line.size() - written);
      if (n > 0) {
        written += static_cast<std::size_t>(n);
        continue;
      }
      if (n < 0 && errno == EINTR) continue;
      if (n < 0 && errno == EAGAIN) {
        const int left = remainingMs(deadline_);
        if (left == 0) return false;
        pollfd fd{stdin_.get(), POLLOUT, 0};
        ::poll(&fd, 1, left);
        continue;
      }
      return false;  // EPIPE: the reader is gone
    }
    return true;
  }

  void closeInput() { stdin_.reset(); }

  // Waits for the process to exit; kills it at the deadline.
  bool awaitExit() {
    while (!exited()) {
      if (remainingMs(deadline_) == 0) {
        kill();
        return false;
      }
      ::usleep(1000);
    }
    return true;
  }

  void kill() {
    if (reaped_) return;
    ::kill(pid_, SIGKILL);
    int status = 0;
    ::waitpid(pid_, &status, 0);
    reaped_ = true;
  }

  void protocolError(std::string detail) {
    if (outcome_.exitKind != ExitKind::ProtocolError) {
      outcome_.exitKind = ExitKind::ProtocolError;
      outcome_.detail = std::move(detail);
    }
  }

  int exitStatusCode() const { return exitCode_; }

 private:
  void spawn() {
    Pipe in = makePipe(), out = makePipe(), err = makePipe(), failure = makePipe();
    std::vector<std::string> argvStorage{config_.executablePath};
    argvStorage.insert(argvStorage.end(), config_.arguments.begin(), config_.arguments.end());
    std::vector<char*> argv;
    for (auto& a : argvStorage) argv.push_back(a.data());
    argv.push_back(nullptr);

    pid_ = ::fork();
    if (pid_ < 0) throw SpawnError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(in.read.get(), STDIN_FILENO);
      ::dup2(out.write.get(), STDOUT_FILENO);
      ::dup2(err.write.get(), STDERR_FILENO);
      ::signal(SIGPIPE, SIG_DFL);
      ::execvp(argv[0], argv.data());
      const int code = errno;
      [[maybe_unused]] auto ignored = ::write(failure.write.get(), &code, sizeof code);
      ::_exit(127);
    }
    failure.write.reset();
    int code = 0;
    ssize_t n;
    do {
      n = ::read(failure.read.get(), &code, sizeof code);
    } while (n < 0 && errno == EINTR);
    if (n == static_cast<ssize_t>(sizeof code)) {
      ::waitpid(pid_, nullptr, 0);
      reaped_ = true;
      throw SpawnError("cannot start '" + config_.executablePath + "': " + std::strerror(code));
    }
    stdin_ = std::move(in.write);
    stdout_ = std::move(out.read);
    stderr_ = std::move(err.read);
    setNonBlocking(stdin_.get());
    setNonBlocking(stdout_.get());
    setNonBlocking(stderr_.get());
  }

  // Reads what is available. For stdout, complete lines become output steps;
  // returns false on an unparsable line.
  bool drain(Fd& fd, std::string& buffer, bool isStdout) {
    char chunk[4096];
    for (;;) {
      const ssize_t n = ::read(fd.get(), chunk, sizeof chunk);
      if (n > 0) {
        buffer.append(chunk, static_cast<std::size_t>(n));
        continue;
      }
      if (n < 0 && errno == EINTR) continue;
      if (n == 0) fd.reset();
      break;
    }
    if (!isStdout) return true;
    std::size_t newline;
    while ((newline = buffer.find('\n')) != std::string::npos) {
      const std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      if (config_.outputParseMode == OutputParseMode::SkipBlank && isBlank(line)) continue;
      auto value = parseOutputLine(line);
      if (!value) {
        protocolError("UnparsableOutput");
        outcome_.diagnostics += "unparsable output line: '" + line + "'\n";
        return false;
      }
      outcome_.trace.steps.push_back(TraceStep::out(std::move(*value)));
    }
    return true;
  }

  void recordExit(int status) {
    reaped_ = true;
    if (WIFEXITED(status)) {
      exitCode_ = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
      exitCode_ = 128 + WTERMSIG(status);
    }
  }

  const SubprocessConfig& config_;
  RunOutcome& outcome_;
  Clock::time_point deadline_;
  pid_t pid_ = -1;
  bool reaped_ = false;
  int exitCode_ = 0;
  Fd stdin_, stdout_, stderr_;
  std::string stdoutBuffer_;
};

void ignoreSigpipe() {
  static const bool installed = [] {
    struct sigaction action {};
    action.sa_handler = SIG_IGN;
    ::sigaction(SIGPIPE, &action, nullptr);
    return true;
  }();
  (void)installed;
}

}  // namespace

RunOutcome runSubprocess(const SubprocessConfig& config, std::span<const Integer> inputs) {
  config.validate();
  ignoreSigpipe();
  RunOutcome outcome;
  ChildSession child(config, outcome);

  auto finish = [&](ChildSession::Pump status) -> RunOutcome {
    if (status == ChildSession::Pump::BadOutput) {
      child.kill();
      return std::move(outcome);
    }
    if (status == ChildSession::Pump::Deadline || !child.awaitExit()) {
      child.kill();
      outcome.exitKind = ExitKind::TimedOut;
      return std::move(outcome);
    }
    if (child.exitStatusCode() != 0) {
      outcome.exitKind = ExitKind::Crashed;
      outcome.exitCode = child.exitStatusCode();
    }
    return std::move(outcome);
  };

  ChildSession::Pump status = child.pump(false);
  for (const auto& value : inputs) {
    if (status != ChildSession::Pump::Quiet) return finish(status);
    if (child.exited() || !child.send(value)) break;
    outcome.trace.steps.push_back(TraceStep::in(value));
    ++outcome.consumedInputs;
    status = child.pump(false);
  }
  if (status == ChildSession::Pump::BadOutput || status == ChildSession::Pump::Deadline) return finish(status);
  child.closeInput();
  return finish(child.pump(true));
}

}  // namespace iospec
