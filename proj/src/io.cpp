#include "pctopo/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <ostream>
#include <string>

namespace pctopo {

namespace {

constexpr std::size_t kChunk = 8u << 20;

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_file(const std::string& path, const char* mode) {
  File f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "'");
  return f;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Calls visit(line, line_number) for every line, without the newline.
template <typename Visit>
void lines_of_text(std::string_view text, Visit&& visit) {
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = nl == std::string_view::npos ? text : text.substr(0, nl);
    visit(line, ++number);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

template <typename Visit>
void lines_of_file(const std::string& path, Visit&& visit) {
  File f = open_file(path, "rb");
  std::string buf;
  std::size_t number = 0;
  std::size_t carry = 0;
  for (;;) {
    buf.resize(carry + kChunk);
    const std::size_t got = std::fread(buf.data() + carry, 1, kChunk, f.get());
    buf.resize(carry + got);
    if (std::ferror(f.get())) throw IoError("read error on '" + path + "'");
    const bool last = got == 0;
    std::string_view rest(buf);
    for (;;) {
      const std::size_t nl = rest.find('\n');
      if (nl == std::string_view::npos) break;
      visit(rest.substr(0, nl), ++number);
      rest.remove_prefix(nl + 1);
    }
    if (last) {
      if (!rest.empty()) visit(rest, ++number);
      return;
    }
    carry = rest.size();
    std::memmove(buf.data(), rest.data(), carry);
  }
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

ParseError parse_error(std::size_t line, const std::string& what) {
  return ParseError("line " + std::to_string(line) + ": " + what);
}

double number_or_throw(std::string_view token, std::size_t line, bool allow_inf) {
  try {
    return parse_double(token, allow_inf);
  } catch (const ParseError& e) {
    throw parse_error(line, e.what());
  }
}

// Cloud rows: accumulates into coords with a fixed column count.
class CloudBuilder {
 public:
  explicit CloudBuilder(bool skip_header) : skip_header_(skip_header) {}

  void operator()(std::string_view line, std::size_t number) {
    if (skippable(line)) return;
    if (skip_header_) {
      skip_header_ = false;
      return;
    }
    std::size_t cols = 0;
    for (;;) {
      const std::size_t comma = line.find(',');
      const std::string_view tok = comma == std::string_view::npos ? line : line.substr(0, comma);
      coords_.push_back(number_or_throw(tok, number, false));
      ++cols;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (dim_ == 0) {
      dim_ = cols;
    } else if (cols != dim_) {
      throw parse_error(number, "expected " + std::to_string(dim_) + " columns, found " + std::to_string(cols));
    }
  }

  PointCloud finish() {
    if (dim_ == 0) throw EmptyInput("no data rows (the dimension of an empty file is unknown)");
    return PointCloud(dim_, std::move(coords_));
  }

 private:
  bool skip_header_;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

class Writer {
 public:
  explicit Writer(const std::string& path) : file_(open_file(path, "wb")), path_(path) { buf_.reserve(kChunk + 256); }

  void put(double v) {
    char tmp[32];
    const auto res = std::to_chars(tmp, tmp + sizeof tmp, v);
    buf_.append(tmp, res.ptr);
  }
  void put(char c) { buf_.push_back(c); }
  void put(std::string_view s) { buf_.append(s); }
  void end_line() {
    buf_.push_back('\n');
    if (buf_.size() >= kChunk) flush();
  }
  void close() {
    flush();
    if (std::fflush(file_.get()) != 0) throw IoError("write error on '" + path_ + "'");
    file_.reset();
  }

 private:
  void flush() {
    if (!buf_.empty() && std::fwrite(buf_.data(), 1, buf_.size(), file_.get()) != buf_.size()) {
      throw IoError("write error on '" + path_ + "'");
    }
    buf_.clear();
  }

  File file_;
  std::string path_;
  std::string buf_;
};

template <typename Sink>
void emit_cloud(Sink& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out.put(',');
      out.put(p[k]);
    }
    out.end_line();
  }
}

struct StringSink {
  std::string s;
  void put(double v) { s += format_double(v); }
  void put(char c) { s.push_back(c); }
  void put(std::string_view v) { s.append(v); }
  void end_line() { s.push_back('\n'); }
};

std::string grid_header(const Grid& grid) {
  std::string h = "# mu=" + format_double(grid.step()) + ", origin=";
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    if (k) h += ';';
    h += format_double(grid.origin()[k]);
  }
  h += grid.halved() ? ", halved=true" : ", halved=false";
  return h;
}

// Returns true if the line is a grid header and fills hint.
bool parse_grid_header(std::string_view line, GridFileHint& hint, std::size_t number) {
  line = trim(line);
  if (line.empty() || line.front() != '#') return false;
  line.remove_prefix(1);
  line = trim(line);
  if (line.substr(0, 3) != "mu=") return false;
  GridFileHint h;
  bool have_halved = false;
  while (!line.empty()) {
    const std::size_t comma = line.find(',');
    const std::string_view field = trim(comma == std::string_view::npos ? line : line.substr(0, comma));
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) throw parse_error(number, "malformed grid header field");
    const std::string_view key = trim(field.substr(0, eq));
    const std::string_view val = trim(field.substr(eq + 1));
    if (key == "mu") {
      h.step = number_or_throw(val, number, false);
    } else if (key == "origin") {
      std::string_view rest = val;
      for (;;) {
        const std::size_t semi = rest.find(';');
        h.origin.push_back(number_or_throw(semi == std::string_view::npos ? rest : rest.substr(0, semi), number, false));
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
      }
    } else if (key == "halved") {
      if (val == "true") {
        h.halved = true;
      } else if (val == "false") {
        h.halved = false;
      } else {
        throw parse_error(number, "halved must be true or false");
      }
      have_halved = true;
    } else {
      throw parse_error(number, "unknown grid header field '" + std::string(key) + "'");
    }
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  if (!h.step || !have_halved) throw parse_error(number, "grid header needs mu and halved");
  hint = std::move(h);
  return true;
}

Grid lattice_from_points(const PointCloud& pts, GridFileHint hint) {
  if (!hint.step) throw InvalidArgument("grid file has no header and no grid interval was given");
  const double step = *hint.step;
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("grid interval must be positive");
  const std::size_t dim = pts.dim();
  if (hint.origin.empty()) hint.origin.assign(dim, 0.0);
  if (hint.origin.size() != dim) {
    throw DimensionMismatch("grid origin has " + std::to_string(hint.origin.size()) + " coordinates, data has " +
                            std::to_string(dim));
  }
  const double h = hint.halved ? step / 2.0 : step;
  std::vector<std::int64_t> cells;
  cells.reserve(pts.size() * dim);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto p = pts.point(i);
    for (std::size_t k = 0; k < dim; ++k) {
      const double q = (p[k] - hint.origin[k]) / h;
      if (!(std::fabs(q) < 9e15)) throw ParseError("row " + std::to_string(i + 1) + ": coordinate off the lattice");
      const auto guess = static_cast<std::int64_t>(std::llround(q));
      bool found = false;
      for (std::int64_t c : {guess, guess - 1, guess + 1}) {
        if (hint.origin[k] + h * static_cast<double>(c) == p[k]) {
          cells.push_back(c);
          found = true;
          break;
        }
      }
      if (!found) throw ParseError("row " + std::to_string(i + 1) + ": coordinate off the lattice");
    }
  }
  return Grid(dim, step, hint.origin, hint.halved, std::move(cells));
}

template <typename Lines>
Grid read_grid(Lines&& lines, const GridFileHint& fallback) {
  GridFileHint hint = fallback;
  bool header_seen = false;
  CloudBuilder rows(false);
  lines([&](std::string_view line, std::size_t number) {
    if (!header_seen && parse_grid_header(line, hint, number)) {
      header_seen = true;
      return;
    }
    rows(line, number);
  });
  PointCloud pts(hint.origin.empty() ? 1 : hint.origin.size());
  try {
    pts = rows.finish();
  } catch (const EmptyInput&) {
    if (hint.origin.empty()) throw;
    // header present but no cells: an empty grid of known dimension
    return Grid(hint.origin.size(), hint.step.value_or(1.0), hint.origin, hint.halved, {});
  }
  return lattice_from_points(pts, hint);
}

class DiagramBuilder {
 public:
  void operator()(std::string_view line, std::size_t number) {
    if (skippable(line)) return;
    std::vector<std::string_view> toks;
    for (;;) {
      const std::size_t comma = line.find(',');
      toks.push_back(comma == std::string_view::npos ? line : line.substr(0, comma));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (toks.size() < 2 || toks.size() > 3) throw parse_error(number, "expected birth,death[,source_index]");
    // a textual header row such as "birth,death"
    if (number_of_rows_ == 0 && trim(toks[0]) == "birth") return;
    Interval iv;
    iv.birth = number_or_throw(toks[0], number, false);
    iv.death = number_or_throw(toks[1], number, true);
    if (iv.death == -kInfinity || !(iv.birth <= iv.death)) throw parse_error(number, "need birth <= death");
    if (toks.size() == 3) {
      const std::string_view t = trim(toks[2]);
      std::size_t idx = 0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), idx);
      if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) {
        throw parse_error(number, "bad source index '" + std::string(t) + "'");
      }
      iv.source_index = idx;
    }
    diagram_.intervals.push_back(iv);
    ++number_of_rows_;
  }

  PersistenceDiagram finish() { return std::move(diagram_); }

 private:
  PersistenceDiagram diagram_;
  std::size_t number_of_rows_ = 0;
};

template <typename Sink>
void emit_diagram(Sink& out, const PersistenceDiagram& d) {
  for (const Interval& iv : d.intervals) {
    out.put(iv.birth);
    out.put(',');
    if (iv.infinite()) {
      out.put(std::string_view("inf"));
    } else {
      out.put(iv.death);
    }
    if (iv.source_index) {
      out.put(',');
      out.put(std::string_view(std::to_string(*iv.source_index)));
    }
    out.end_line();
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char tmp[32];
  const auto res = std::to_chars(tmp, tmp + sizeof tmp, v);
  return std::string(tmp, res.ptr);
}

double parse_double(std::string_view token, bool allow_inf) {
  std::string_view t = trim(token);
  if (allow_inf && (t == "inf" || t == "Inf" || t == "+inf")) return kInfinity;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ParseError("bad number '" + std::string(token) + "'");
  }
  return v;
}

PointCloud parse_cloud_csv(std::string_view text, bool skip_header) {
  CloudBuilder b(skip_header);
  lines_of_text(text, b);
  return b.finish();
}

PointCloud read_cloud_csv(const std::string& path, bool skip_header) {
  CloudBuilder b(skip_header);
  lines_of_file(path, b);
  try {
    return b.finish();
  } catch (const EmptyInput& e) {
    throw EmptyInput("'" + path + "': " + e.what());
  }
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
  Writer w(path);
  emit_cloud(w, cloud);
  w.close();
}

std::string format_cloud_csv(const PointCloud& cloud) {
  StringSink s;
  emit_cloud(s, cloud);
  return std::move(s.s);
}

Grid read_grid_csv(const std::string& path, const GridFileHint& hint) {
  return read_grid([&](auto&& visit) { lines_of_file(path, visit); }, hint);
}

Grid parse_grid_csv(std::string_view text, const GridFileHint& hint) {
  return read_grid([&](auto&& visit) { lines_of_text(text, visit); }, hint);
}

void write_grid_csv(const std::string& path, const Grid& grid) {
  Writer w(path);
  w.put(std::string_view(grid_header(grid)));
  w.end_line();
  emit_cloud(w, grid.embed_all());
  w.close();
}

std::string format_grid_csv(const Grid& grid) {
  StringSink s;
  s.put(std::string_view(grid_header(grid)));
  s.end_line();
  emit_cloud(s, grid.embed_all());
  return std::move(s.s);
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
  DiagramBuilder b;
  lines_of_file(path, b);
  return b.finish();
}

PersistenceDiagram parse_diagram_csv(std::string_view text) {
  DiagramBuilder b;
  lines_of_text(text, b);
  return b.finish();
}

void write_diagram_csv(const std::string& path, const PersistenceDiagram& diagram) {
  Writer w(path);
  emit_diagram(w, diagram);
  w.close();
}

std::string format_diagram_csv(const PersistenceDiagram& diagram) {
  StringSink s;
  emit_diagram(s, diagram);
  return std::move(s.s);
}

void write_suite_csv(std::ostream& out, const std::vector<SuiteCase>& cases) {
  out << "theorem,seed,n,N,parameter,bound,value,pass\n";
  for (const SuiteCase& c : cases) {
    out << theorem_name(c.theorem) << ',' << c.seed << ',' << c.n << ',' << c.dim << ',' << format_double(c.parameter)
        << ',' << format_double(c.bound) << ',' << format_double(c.value) << ',' << (c.pass ? "true" : "false")
        << '\n';
  }
}

}  // namespace pctopo
