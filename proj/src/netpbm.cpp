#include "xsect/netpbm.hpp"

#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "xsect/errors.hpp"

namespace xsect {
namespace {

// Netpbm header/raster tokens; comments are collected separately.
struct Tokens {
  std::vector<std::string> words;
  std::vector<std::string> comments;
};

Tokens tokenize(std::istream& is) {
  Tokens t;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      t.comments.push_back(line.substr(hash + 1));
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string w;
    while (ls >> w) t.words.push_back(w);
  }
  return t;
}

long to_long(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw ParseError("bad netpbm token '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad netpbm token '" + s + "'");
  }
}

int exact_log2(long v, const char* what) {
  int e = 0;
  while ((1L << e) < v) ++e;
  if ((1L << e) != v) throw ParseError(std::string(what) + " is not a power of two");
  return e;
}

std::int32_t maxval_for(int refinement) { return refinement <= 7 ? 255 : (std::int32_t{1} << refinement); }

}  // namespace

void write_matrix_text(std::ostream& os, const BinaryMatrix& a) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) os << (a(r, c) ? '1' : '0');
    os << '\n';
  }
}

BinaryMatrix read_matrix_text(std::istream& is) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  const auto rows = static_cast<Eigen::Index>(lines.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(lines.front().size());
  BinaryMatrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& l = lines[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(l.size()) != cols) throw ParseError("ragged matrix text");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const char ch = l[static_cast<std::size_t>(c)];
      if (ch != '0' && ch != '1') throw ParseError("matrix text must contain only 0 and 1");
      a.set(r, c, ch == '1');
    }
  }
  return a;
}

void write_pbm(std::ostream& os, const BinaryMatrix& a) {
  os << "P1\n" << a.cols() << ' ' << a.rows() << '\n';
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) os << (c ? " " : "") << (a(r, c) ? 1 : 0);
    os << '\n';
  }
}

BinaryMatrix read_pbm(std::istream& is) {
  const Tokens t = tokenize(is);
  if (t.words.size() < 3 || t.words[0] != "P1") throw ParseError("not a PBM P1 file");
  const long cols = to_long(t.words[1]);
  const long rows = to_long(t.words[2]);
  if (cols < 0 || rows < 0) throw ParseError("negative PBM dimensions");
  // P1 rasters may also be written without separators.
  std::string bits;
  for (std::size_t i = 3; i < t.words.size(); ++i) bits += t.words[i];
  if (static_cast<long>(bits.size()) != rows * cols) throw ParseError("PBM raster size mismatch");
  BinaryMatrix a(rows, cols);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      const char ch = bits[static_cast<std::size_t>(r * cols + c)];
      if (ch != '0' && ch != '1') throw ParseError("PBM raster must contain only 0 and 1");
      a.set(r, c, ch == '1');
    }
  }
  return a;
}

void write_set_image(std::ostream& os, const DyadicSet& e) {
  const auto& p = e.params();
  const Eigen::Index side = p.cells();
  if (p.refinement == 0) {
    os << "P1\n# xsect N=" << p.depth << " K=0\n" << side << ' ' << side << '\n';
    for (Eigen::Index img = 0; img < side; ++img) {
      const Eigen::Index r = side - 1 - img;
      for (Eigen::Index c = 0; c < side; ++c) os << (c ? " " : "") << e(r, c);
      os << '\n';
    }
    return;
  }
  const std::int64_t maxval = maxval_for(p.refinement);
  const std::int64_t denom = p.units_per_cell();
  os << "P2\n# xsect N=" << p.depth << " K=" << p.refinement << '\n'
     << side << ' ' << side << '\n'
     << maxval << '\n';
  for (Eigen::Index img = 0; img < side; ++img) {
    const Eigen::Index r = side - 1 - img;
    for (Eigen::Index c = 0; c < side; ++c) {
      const std::int64_t pixel = (2 * maxval * e(r, c) + denom) / (2 * denom);
      os << (c ? " " : "") << pixel;
    }
    os << '\n';
  }
}

DyadicSet read_set_image(std::istream& is, std::optional<int> refinement) {
  const Tokens t = tokenize(is);
  if (t.words.size() < 3) throw ParseError("truncated netpbm file");
  const std::string& magic = t.words[0];
  if (magic != "P1" && magic != "P2") throw ParseError("set image must be PBM P1 or PGM P2");

  std::optional<int> comment_n;
  std::optional<int> comment_k;
  static const std::regex tag(R"(xsect\s+N=(\d+)\s+K=(\d+))");
  for (const auto& c : t.comments) {
    std::smatch m;
    if (std::regex_search(c, m, tag)) {
      comment_n = std::stoi(m[1]);
      comment_k = std::stoi(m[2]);
    }
  }

  const long width = to_long(t.words[1]);
  const long height = to_long(t.words[2]);
  if (width != height) throw ParseError("set image must be square");
  const int depth = exact_log2(width, "set image side");
  if (comment_n && *comment_n != depth) throw ParseError("set image size disagrees with its N tag");

  int k = 0;
  std::size_t first = 3;
  std::int64_t maxval = 1;
  if (magic == "P2") {
    if (comment_k) {
      k = *comment_k;
    } else if (refinement) {
      k = *refinement;
    } else {
      throw ParseError("PGM set image without K; pass the refinement explicitly");
    }
    if (t.words.size() < 4) throw ParseError("truncated PGM header");
    maxval = to_long(t.words[3]);
    first = 4;
    if (maxval != maxval_for(k)) throw ParseError("unexpected PGM maxval for this K");
  }
  const GridParams params(depth, k);
  const std::int64_t denom = params.units_per_cell();

  std::vector<long> px;
  if (magic == "P1") {
    std::string bits;
    for (std::size_t i = first; i < t.words.size(); ++i) bits += t.words[i];
    for (char ch : bits) {
      if (ch != '0' && ch != '1') throw ParseError("PBM raster must contain only 0 and 1");
      px.push_back(ch - '0');
    }
  } else {
    for (std::size_t i = first; i < t.words.size(); ++i) px.push_back(to_long(t.words[i]));
  }
  if (static_cast<long>(px.size()) != width * height) throw ParseError("raster size mismatch");

  FillGrid fill(width, width);
  for (long img = 0; img < height; ++img) {
    const long r = height - 1 - img;
    for (long c = 0; c < width; ++c) {
      const long v = px[static_cast<std::size_t>(img * width + c)];
      if (v < 0 || v > maxval) throw ParseError("pixel value out of range");
      const std::int64_t w = (2 * v * denom + maxval) / (2 * maxval);
      if ((2 * maxval * w + denom) / (2 * denom) != v) {
        throw ParseError("pixel value does not correspond to a fill width");
      }
      fill(r, c) = static_cast<std::int32_t>(w);
    }
  }
  return DyadicSet(params, std::move(fill));
}

}  // namespace xsect
