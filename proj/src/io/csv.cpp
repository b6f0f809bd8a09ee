#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "isoclus/errors.hpp"
#include "isoclus/io.hpp"

namespace isoclus {

namespace {

std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += escape(cells[i]);
  }
  return line + "\n";
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

[[noreturn]] void sys_error(const std::string& what, const std::filesystem::path& p) {
  throw std::runtime_error(what + " " + p.string() + ": " + std::strerror(errno));
}

std::string first_line(int fd) {
  std::string line;
  char buf[4096];
  off_t off = 0;
  while (true) {
    ssize_t n = ::pread(fd, buf, sizeof buf, off);
    if (n <= 0) break;
    for (ssize_t i = 0; i < n; ++i) {
      if (buf[i] == '\n') return line + "\n";
      line += buf[i];
    }
    off += n;
  }
  return line;
}

}  // namespace

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string CsvTable::to_string(bool with_header) const {
  std::string s = with_header ? join(header) : std::string();
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw DomainError("CSV row width does not match the header");
    s += join(r);
  }
  return s;
}

void append_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  Fd fd(::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644));
  if (fd.get() < 0) sys_error("cannot open", path);
  if (::flock(fd.get(), LOCK_EX) != 0) sys_error("cannot lock", path);
  struct stat st {};
  if (::fstat(fd.get(), &st) != 0) sys_error("cannot stat", path);
  bool fresh = st.st_size == 0;
  if (!fresh) {
    Fd rd(::open(path.c_str(), O_RDONLY | O_CLOEXEC));
    if (rd.get() < 0) sys_error("cannot read", path);
    if (first_line(rd.get()) != join(table.header))
      throw DomainError("CSV schema mismatch with the existing header of " + path.string());
  }
  std::string data = table.to_string(fresh);
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd.get(), p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      sys_error("cannot write", path);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  ::flock(fd.get(), LOCK_UN);
}

}  // namespace isoclus
