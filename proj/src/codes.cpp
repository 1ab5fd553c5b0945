#include "smlab/codes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "smlab/error.hpp"

namespace smlab::codes {

namespace {

constexpr long long kGuard = 1000000;

int digit_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'z') return ch - 'a' + 10;
  return -1;
}

char digit_char(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

/// q^e if it stays below the guard, else -1.
long long guarded_pow(long long base, int e) {
  long long out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > kGuard / std::max(1LL, base)) return -1;
    out *= base;
  }
  return out;
}

}  // namespace

void Code::check() const {
  if (q < 2) fail(ErrorCode::InvalidCode, "alphabet size must be >= 2");
  if (n < 1) fail(ErrorCode::InvalidCode, "block length must be >= 1");
  if (words.empty()) fail(ErrorCode::InvalidCode, "a code needs at least one word");
  std::set<Word> seen;
  for (const auto& w : words) {
    if (static_cast<int>(w.size()) != n) fail(ErrorCode::InvalidCode, "codeword of wrong length");
    for (int v : w)
      if (v < 0 || v >= q) fail(ErrorCode::InvalidCode, "digit outside the alphabet");
    if (!seen.insert(w).second) fail(ErrorCode::InvalidCode, "repeated codeword");
  }
}

Code parse_code(const std::string& text) {
  std::istringstream in(text);
  Code c;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(b, e - b + 1);
    if (!header) {
      std::istringstream hs(body);
      if (!(hs >> c.q >> c.n)) fail(ErrorCode::InvalidCode, "header must be \"q n\"");
      if (c.q > 36) fail(ErrorCode::InvalidCode, "text format supports q <= 36");
      header = true;
      continue;
    }
    Word w;
    for (char ch : body) {
      const int v = digit_value(ch);
      if (v < 0) fail(ErrorCode::InvalidCode, "bad digit '" + std::string(1, ch) + "'");
      w.push_back(v);
    }
    c.words.push_back(std::move(w));
  }
  if (!header) fail(ErrorCode::InvalidCode, "missing header");
  c.check();
  return c;
}

Code load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidCode, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_code(ss.str());
}

std::string format_code(const Code& c) {
  if (c.q > 36) fail(ErrorCode::InvalidCode, "text format supports q <= 36");
  std::string out = std::to_string(c.q) + " " + std::to_string(c.n) + "\n";
  for (const auto& w : c.words) {
    for (int v : w) out += digit_char(v);
    out += '\n';
  }
  return out;
}

Code repetition_code(int n, int q) {
  Code c{q, n, {}};
  for (int a = 0; a < q; ++a) c.words.emplace_back(static_cast<size_t>(n), a);
  c.check();
  return c;
}

Code hamming74() {
  static const int P[4][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  Code c{2, 7, {}};
  for (int msg = 0; msg < 16; ++msg) {
    Word w(7, 0);
    for (int i = 0; i < 4; ++i) {
      if (!((msg >> i) & 1)) continue;
      w[static_cast<size_t>(i)] ^= 1;
      for (int j = 0; j < 3; ++j) w[static_cast<size_t>(4 + j)] ^= P[i][j];
    }
    c.words.push_back(w);
  }
  c.check();
  return c;
}

Code full_cube(int n, int q) {
  const long long total = guarded_pow(q, n);
  if (total < 0) fail(ErrorCode::TooLarge, "cube too large");
  Code c{q, n, {}};
  for (long long idx = 0; idx < total; ++idx) {
    Word w(static_cast<size_t>(n));
    long long r = idx;
    for (int i = n - 1; i >= 0; --i) w[static_cast<size_t>(i)] = static_cast<int>(r % q), r /= q;
    c.words.push_back(w);
  }
  c.check();
  return c;
}

int hamming(const Word& x, const Word& y) {
  if (x.size() != y.size()) fail(ErrorCode::LengthMismatch, "words of different length");
  int d = 0;
  for (size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

double log_q_size(const Code& c) {
  long long p = 1;
  for (int j = 0; p <= static_cast<long long>(c.size()); ++j, p *= c.q)
    if (p == static_cast<long long>(c.size())) return j;
  return std::log(static_cast<double>(c.size())) / std::log(static_cast<double>(c.q));
}

CodeParams code_params(const Code& c) {
  c.check();
  if (c.size() < 2) fail(ErrorCode::SingletonCode, "minimum distance needs two codewords");
  CodeParams p;
  p.k = log_q_size(c);
  p.d = std::numeric_limits<int>::max();
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j) p.d = std::min(p.d, hamming(c.words[i], c.words[j]));
  p.R = p.k / c.n;
  p.delta = static_cast<double>(p.d) / c.n;
  return p;
}

long long structure_function(const Code& c, int N) {
  c.check();
  if (N < 0) fail(ErrorCode::ConfigInvalid, "length must be >= 0");
  if (N % c.n != 0) return 0;
  const int m = N / c.n;
  if (guarded_pow(static_cast<long long>(c.size()), m) < 0) fail(ErrorCode::TooLarge, "too many words to enumerate");
  std::set<Word> strings{Word{}};
  for (int step = 0; step < m; ++step) {
    std::set<Word> next;
    for (const auto& s : strings)
      for (const auto& w : c.words) {
        Word t = s;
        t.insert(t.end(), w.begin(), w.end());
        next.insert(std::move(t));
      }
    strings = std::move(next);
  }
  return static_cast<long long>(strings.size());
}

EntropyEstimate entropy(const Code& c, int m_max) {
  c.check();
  if (m_max < 1) fail(ErrorCode::ConfigInvalid, "m_max must be >= 1");
  EntropyEstimate e;
  const double lq = std::log(static_cast<double>(c.q));
  for (int m = 1; m <= m_max; ++m) {
    double log_s;
    if (guarded_pow(static_cast<long long>(c.size()), m) >= 0)
      log_s = std::log(static_cast<double>(structure_function(c, c.n * m)));
    else
      log_s = m * std::log(static_cast<double>(c.size()));
    const double N = static_cast<double>(c.n) * m;
    // rho ~ s(N)^{-1/N}; entropy = -log_q rho
    e.root_test.push_back(log_s / N / lq);
  }
  e.entropy = e.root_test.back();
  return e;
}

ZetaReport code_zeta(const Code& c, double s, int m_max) {
  c.check();
  if (m_max < 1) fail(ErrorCode::ConfigInvalid, "m_max must be >= 1");
  ZetaReport z;
  const double q = c.q;
  const double R = log_q_size(c) / c.n;
  z.x = static_cast<double>(c.size()) * std::pow(q, -s * c.n);
  double term = 1.0;
  for (int m = 1; m <= m_max; ++m) {
    term *= z.x;
    z.partial += term;
  }
  z.divergent = s <= R || z.x >= 1.0;
  const double inf = std::numeric_limits<double>::infinity();
  if (z.divergent) {
    z.closed = inf;
    z.remainder_bound = inf;
    z.slack = 0.0;
    z.stated_form = inf;
    z.corrected_form = inf;
    return z;
  }
  z.closed = z.x / (1.0 - z.x);
  z.remainder_bound = term * z.x / (1.0 - z.x);
  z.slack = z.remainder_bound - (z.closed - z.partial);
  z.stated_form = 1.0 / (1.0 - std::pow(q, R - s));
  z.corrected_form = 1.0 / (1.0 - std::pow(q, (R - s) * c.n));
  return z;
}

HausdorffDims hausdorff_dims(const Code& c) {
  c.check();
  const double k = log_q_size(c);
  return {k, k / c.n};
}

PlaneReport coordinate_plane_check(const Code& c, int ell) {
  c.check();
  if (ell < 0 || ell > c.n) fail(ErrorCode::ConfigInvalid, "plane dimension must lie in [0, n]");
  PlaneReport rep;
  rep.ell = ell;
  std::vector<int> mask(static_cast<size_t>(c.n), 0);
  std::fill(mask.end() - ell, mask.end(), 1);  // 1 marks a free coordinate
  long long subsets = 0;
  do {
    if (++subsets > kGuard) fail(ErrorCode::TooLarge, "too many coordinate subsets");
    std::map<Word, int> count;
    for (const auto& w : c.words) {
      Word key;
      for (int i = 0; i < c.n; ++i)
        if (!mask[static_cast<size_t>(i)]) key.push_back(w[static_cast<size_t>(i)]);
      ++count[key];
    }
    rep.planes += static_cast<long long>(count.size());
    for (const auto& [key, cnt] : count) {
      if (cnt <= rep.max_points) continue;
      rep.max_points = cnt;
      rep.free_coords.clear();
      rep.fixed_coords.clear();
      for (int i = 0; i < c.n; ++i) (mask[static_cast<size_t>(i)] ? rep.free_coords : rep.fixed_coords).push_back(i);
      rep.fixed_values = key;
    }
  } while (std::next_permutation(mask.begin(), mask.end()));
  return rep;
}

Code extend_code(const Code& c, int m) {
  c.check();
  if (m < 1) fail(ErrorCode::ConfigInvalid, "extension degree must be >= 1");
  const long long total = guarded_pow(static_cast<long long>(c.size()), m);
  const long long qm = guarded_pow(c.q, m);
  if (total < 0 || qm < 0) fail(ErrorCode::TooLarge, "extended code exceeds 10^6 words");
  Code out{static_cast<int>(qm), c.n, {}};
  out.words.reserve(static_cast<size_t>(total));
  for (long long idx = 0; idx < total; ++idx) {
    Word w(static_cast<size_t>(c.n), 0);
    long long r = idx, scale = 1;
    for (int j = 0; j < m; ++j) {
      const Word& u = c.words[static_cast<size_t>(r % static_cast<long long>(c.size()))];
      r /= static_cast<long long>(c.size());
      for (int i = 0; i < c.n; ++i) w[static_cast<size_t>(i)] += static_cast<int>(u[static_cast<size_t>(i)] * scale);
      scale *= c.q;
    }
    out.words.push_back(std::move(w));
  }
  out.check();
  return out;
}

}  // namespace smlab::codes
