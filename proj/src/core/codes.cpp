#include "codes.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace mpqc::codes {

namespace {

std::uint64_t to_mask(const gf2::BitVector &v) {
  if (v.size() > 64)
    throw CodeError("operation requires block length <= 64");
  return v.words().empty() ? 0 : v.words()[0];
}

gf2::BitVector from_mask(std::uint64_t m, std::size_t n) {
  gf2::BitVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((m >> i) & 1)
      v.set(i, true);
  return v;
}

bool parity(std::uint64_t x) { return std::popcount(x) & 1; }

std::vector<std::uint64_t> row_masks(const gf2::BitMatrix &m) {
  std::vector<std::uint64_t> out;
  out.reserve(m.row_count());
  for (std::size_t i = 0; i < m.row_count(); ++i)
    out.push_back(to_mask(m.row(i)));
  return out;
}

gf2::BitMatrix matrix_from_rows(const std::vector<gf2::BitVector> &rows,
                                std::size_t cols) {
  gf2::BitMatrix m(0, cols);
  for (const auto &r : rows)
    m.append_row(r);
  return m;
}

// All XOR combinations of the given generator masks, in subset-counter
// order so reports are reproducible.
std::vector<std::uint64_t> span_masks(const std::vector<std::uint64_t> &gens) {
  if (gens.size() > 20)
    throw CodeError("span enumeration too large");
  std::vector<std::uint64_t> out(std::size_t{1} << gens.size(), 0);
  for (std::size_t s = 1; s < out.size(); ++s) {
    unsigned low = std::countr_zero(s);
    out[s] = out[s ^ (std::size_t{1} << low)] ^ gens[low];
  }
  return out;
}

} // namespace

std::string TriorthogonalityWitness::describe() const {
  std::ostringstream os;
  os << (rows.size() == 2 ? "pair" : "triple") << " (";
  for (std::size_t i = 0; i < rows.size(); ++i)
    os << (i ? "," : "") << rows[i] + 1;
  os << ") has odd product weight " << overlap_weight;
  return os.str();
}

std::optional<TriorthogonalityWitness>
check_triorthogonal(const gf2::BitMatrix &g) {
  const std::size_t m = g.row_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::size_t w = gf2::entrywise_product(g.row(i), g.row(j)).weight();
      if (w & 1)
        return TriorthogonalityWitness{{i, j}, w};
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      gf2::BitVector ij = gf2::entrywise_product(g.row(i), g.row(j));
      for (std::size_t k = j + 1; k < m; ++k) {
        std::size_t w = gf2::entrywise_product(ij, g.row(k)).weight();
        if (w & 1)
          return TriorthogonalityWitness{{i, j, k}, w};
      }
    }
  }
  return std::nullopt;
}

TriorthogonalMatrix make_triorthogonal(gf2::BitMatrix g) {
  if (auto w = check_triorthogonal(g))
    throw CodeError("matrix is not triorthogonal: " + w->describe());
  return TriorthogonalMatrix{std::move(g)};
}

std::optional<std::string> css_invariant_violation(const CssCode &code) {
  const auto &sx = code.x_stabilizers;
  const auto &sz = code.z_stabilizers;
  for (std::size_t i = 0; i < sx.row_count(); ++i)
    for (std::size_t j = 0; j < sz.row_count(); ++j)
      if (sx.row(i).dot(sz.row(j)))
        return "X stabilizer " + std::to_string(i) +
               " anticommutes with Z stabilizer " + std::to_string(j);
  for (std::size_t a = 0; a < code.k; ++a) {
    if (!code.logical_x.row(a).dot(code.logical_z.row(a)))
      return "logical pair " + std::to_string(a) + " fails to anticommute";
    for (std::size_t b = 0; b < code.k; ++b)
      if (a != b && code.logical_x.row(a).dot(code.logical_z.row(b)))
        return "logical X " + std::to_string(a) +
               " anticommutes with logical Z " + std::to_string(b);
    for (std::size_t j = 0; j < sz.row_count(); ++j)
      if (code.logical_x.row(a).dot(sz.row(j)))
        return "logical X anticommutes with Z stabilizer " + std::to_string(j);
    for (std::size_t j = 0; j < sx.row_count(); ++j)
      if (code.logical_z.row(a).dot(sx.row(j)))
        return "logical Z anticommutes with X stabilizer " + std::to_string(j);
  }
  std::size_t rx = gf2::rank(sx);
  std::size_t rz = gf2::rank(sz);
  if (code.n != rx + rz + code.k)
    return "k != n - rank(Sx) - rank(Sz)";
  return std::nullopt;
}

CssCode build_css(const TriorthogonalMatrix &src) {
  const gf2::BitMatrix &g = src.g;
  if (auto w = check_triorthogonal(g))
    throw CodeError("matrix is not triorthogonal: " + w->describe());
  const std::size_t n = g.col_count();

  // Fold all odd-weight rows onto the first one; this keeps the row
  // space and triorthogonality while leaving a single logical row.
  std::vector<gf2::BitVector> even_rows;
  std::optional<gf2::BitVector> logical;
  for (std::size_t i = 0; i < g.row_count(); ++i) {
    gf2::BitVector r = g.row(i);
    if (r.weight() % 2 == 0) {
      if (!r.is_zero())
        even_rows.push_back(std::move(r));
      continue;
    }
    if (!logical) {
      logical = std::move(r);
    } else {
      r ^= *logical;
      if (!r.is_zero())
        even_rows.push_back(std::move(r));
    }
  }
  if (!logical)
    throw CodeError("no odd-weight row: k = 0, unusable for the protocol");

  CssCode code;
  code.n = n;
  code.source = src;
  code.x_stabilizers = matrix_from_rows(even_rows, n);
  code.logical_x = gf2::BitMatrix(0, n);
  code.logical_x.append_row(*logical);

  // Even-weight part of the orthogonal complement of the full matrix.
  gf2::BitMatrix null = gf2::nullspace(g);
  std::vector<gf2::BitVector> zrows;
  std::optional<gf2::BitVector> odd;
  for (std::size_t i = 0; i < null.row_count(); ++i) {
    gf2::BitVector r = null.row(i);
    if (r.weight() % 2 == 0) {
      zrows.push_back(std::move(r));
    } else if (!odd) {
      odd = std::move(r);
    } else {
      r ^= *odd;
      if (!r.is_zero())
        zrows.push_back(std::move(r));
    }
  }
  code.z_stabilizers = matrix_from_rows(zrows, n);

  std::size_t rx = gf2::rank(code.x_stabilizers);
  std::size_t rz = gf2::rank(code.z_stabilizers);
  if (n < rx + rz || n - rx - rz != 1)
    throw CodeError("code has k = " + std::to_string(n - rx - rz) +
                    ", protocol needs k = 1");
  code.k = 1;

  // Logical Z: orthogonal to every X stabilizer, odd overlap with the
  // logical X row.
  gf2::BitMatrix sys = code.x_stabilizers;
  sys.append_row(code.logical_x.row(0));
  gf2::BitVector rhs(sys.row_count());
  rhs.set(sys.row_count() - 1, true);
  auto lz = gf2::solve(sys, rhs);
  if (!lz)
    throw CodeError("logical operator pairing system is infeasible");
  code.logical_z = gf2::BitMatrix(0, n);
  code.logical_z.append_row(*lz);

  if (auto why = css_invariant_violation(code))
    throw CodeError("construction invariant violated: " + *why);
  return code;
}

DistanceResult min_distance(const CssCode &code, std::size_t w_max) {
  if (w_max < 1)
    throw std::invalid_argument("min_distance: w_max must be >= 1");
  const std::size_t n = code.n;
  if (n > 49)
    throw CodeError("distance enumeration capped at n = 49");

  auto sx = row_masks(code.x_stabilizers);
  auto sz = row_masks(code.z_stabilizers);
  std::uint64_t lx = to_mask(code.logical_x.row(0));
  std::uint64_t lz = to_mask(code.logical_z.row(0));

  auto is_z_logical = [&](std::uint64_t e) {
    if (!parity(e & lx))
      return false;
    for (auto s : sx)
      if (parity(e & s))
        return false;
    return true;
  };
  auto is_x_logical = [&](std::uint64_t e) {
    if (!parity(e & lz))
      return false;
    for (auto s : sz)
      if (parity(e & s))
        return false;
    return true;
  };

  for (std::size_t w = 1; w <= w_max && w <= n; ++w) {
    // Gosper's hack over all weight-w masks of n bits.
    std::uint64_t e = (std::uint64_t{1} << w) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (e < limit) {
      if (is_z_logical(e) || is_x_logical(e))
        return DistanceResult{true, w};
      std::uint64_t c = e & (~e + 1);
      std::uint64_t r = e + c;
      e = (((r ^ e) >> 2) / c) | r;
    }
  }
  return DistanceResult{false, w_max};
}

namespace {

struct CosetTriples {
  std::size_t n = 0;
  // Codeword masks: first half class 0, second half class 1.
  std::vector<std::uint64_t> words;
  std::size_t half = 0;
};

CosetTriples enumerate_cosets(const CssCode &code) {
  if (code.k != 1)
    throw CodeError("transversal CCZ check supports k = 1 only");
  auto gens = row_masks(code.x_stabilizers);
  if (gens.size() > 9)
    throw CodeError("coset enumeration too large (more than 2^9 codewords)");
  CosetTriples ct;
  ct.n = code.n;
  auto stab_span = span_masks(gens);
  ct.half = stab_span.size();
  std::uint64_t lx = to_mask(code.logical_x.row(0));
  ct.words = stab_span;
  ct.words.reserve(2 * ct.half);
  for (auto s : stab_span)
    ct.words.push_back(s ^ lx);
  return ct;
}

} // namespace

CczReport check_transversal_ccz(const CssCode &code) {
  CosetTriples ct = enumerate_cosets(code);
  CczReport report;
  const std::size_t total = ct.words.size();
  for (std::size_t iu = 0; iu < total; ++iu) {
    const int x = iu >= ct.half;
    for (std::size_t iv = 0; iv < total; ++iv) {
      const int y = iv >= ct.half;
      const std::uint64_t uv = ct.words[iu] & ct.words[iv];
      for (std::size_t iw = 0; iw < total; ++iw) {
        const int z = iw >= ct.half;
        if (parity(uv & ct.words[iw]) != (x & y & z)) {
          report.is_exact = false;
          report.failing_witness = CosetTripleWitness{
              x, y, z, ct.words[iu], ct.words[iv], ct.words[iw]};
          auto corr = ccz_correction_search(code);
          report.correction_found = corr.has_value();
          if (corr)
            report.correction = *corr;
          return report;
        }
      }
    }
  }
  report.is_exact = true;
  return report;
}

std::optional<CczCorrection> ccz_correction_search(const CssCode &code) {
  CosetTriples ct = enumerate_cosets(code);
  const std::size_t n = ct.n;
  if (n > 16 || ct.half > 32)
    throw CodeError("correction search supported for small codes only");
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t unknowns = n + pairs;

  auto pair_index = [&](std::size_t q, std::size_t p) {
    // q < p; pairs ordered (0,1),(0,2),...,(0,n-1),(1,2),...
    return n + q * n - q * (q + 1) / 2 + (p - q - 1);
  };

  // One equation per coset triple: the per-block diagonal correction,
  // applied to u, v and w alike, must add exactly the phase defect.
  gf2::BitMatrix eqs(0, unknowns);
  std::vector<bool> rhs_bits;
  const std::size_t total = ct.words.size();
  for (std::size_t iu = 0; iu < total; ++iu) {
    for (std::size_t iv = 0; iv < total; ++iv) {
      for (std::size_t iw = 0; iw < total; ++iw) {
        const std::uint64_t u = ct.words[iu], v = ct.words[iv],
                            w = ct.words[iw];
        const int x = iu >= ct.half, y = iv >= ct.half, z = iw >= ct.half;
        bool defect = parity(u & v & w) != (x & y & z);
        gf2::BitVector row(unknowns);
        std::uint64_t zcoef = u ^ v ^ w;
        for (std::size_t q = 0; q < n; ++q)
          if ((zcoef >> q) & 1)
            row.set(q, true);
        for (std::size_t q = 0; q < n; ++q) {
          for (std::size_t p = q + 1; p < n; ++p) {
            bool c = (((u >> q) & (u >> p)) ^ ((v >> q) & (v >> p)) ^
                      ((w >> q) & (w >> p))) &
                     1;
            if (c)
              row.set(pair_index(q, p), true);
          }
        }
        eqs.append_row(std::move(row));
        rhs_bits.push_back(defect);
      }
    }
  }
  gf2::BitVector rhs(rhs_bits.size());
  for (std::size_t i = 0; i < rhs_bits.size(); ++i)
    rhs.set(i, rhs_bits[i]);

  auto particular = gf2::solve(eqs, rhs);
  if (!particular)
    return std::nullopt;

  // Pick the minimal-support solution, lexicographic on support sets.
  gf2::BitMatrix null = gf2::nullspace(eqs);
  gf2::BitVector best = *particular;
  if (null.row_count() <= 16) {
    auto support_less = [](const gf2::BitVector &a, const gf2::BitVector &b) {
      std::size_t wa = a.weight(), wb = b.weight();
      if (wa != wb)
        return wa < wb;
      return a.to_string() > b.to_string(); // earlier 1s win
    };
    const std::size_t combos = std::size_t{1} << null.row_count();
    for (std::size_t s = 0; s < combos; ++s) {
      gf2::BitVector cand = *particular;
      for (std::size_t i = 0; i < null.row_count(); ++i)
        if ((s >> i) & 1)
          cand ^= null.row(i);
      if (support_less(cand, best))
        best = cand;
    }
  }

  CczCorrection corr;
  for (std::size_t q = 0; q < n; ++q)
    if (best.get(q))
      corr.z_qubits.push_back(q);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = q + 1; p < n; ++p)
      if (best.get(pair_index(q, p)))
        corr.cz_pairs.emplace_back(q, p);
  return corr;
}

TriorthogonalMatrix construct_rm15() {
  gf2::BitMatrix g(5, 15);
  for (std::size_t c = 0; c < 15; ++c) {
    g.set(0, c, true);
    std::size_t value = c + 1;
    for (std::size_t bit = 0; bit < 4; ++bit)
      if ((value >> bit) & 1)
        g.set(1 + bit, c, true);
  }
  return make_triorthogonal(std::move(g));
}

TriorthogonalMatrix parse_code_text(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  gf2::BitMatrix g;
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    if (!have_header) {
      std::istringstream hs(line);
      long long hn = 0, hm = 0;
      if (!(hs >> hn >> hm) || hn < 1 || hm < 1) {
        throw ParseError(lineno, "expected header 'n m'");
      }
      std::string trailing;
      if (hs >> trailing)
        throw ParseError(lineno, "unexpected trailing content in header");
      n = static_cast<std::size_t>(hn);
      m = static_cast<std::size_t>(hm);
      have_header = true;
      g = gf2::BitMatrix(0, n);
      continue;
    }
    if (rows_read == m)
      throw ParseError(lineno, "more rows than declared in the header");
    if (line.size() != n)
      throw ParseError(lineno, "row has " + std::to_string(line.size()) +
                                   " characters, expected " +
                                   std::to_string(n));
    for (char ch : line)
      if (ch != '0' && ch != '1')
        throw ParseError(lineno, "row characters must be 0 or 1");
    g.append_row(gf2::BitVector::from_string(line));
    ++rows_read;
  }
  if (!have_header)
    throw ParseError(lineno ? lineno : 1, "missing header 'n m'");
  if (rows_read != m)
    throw ParseError(lineno, "expected " + std::to_string(m) +
                                 " rows, found " + std::to_string(rows_read));
  return make_triorthogonal(std::move(g));
}

std::string format_code_text(const TriorthogonalMatrix &g) {
  std::ostringstream os;
  os << g.g.col_count() << ' ' << g.g.row_count() << '\n';
  for (std::size_t i = 0; i < g.g.row_count(); ++i)
    os << g.g.row(i).to_string() << '\n';
  return os.str();
}

TriorthogonalMatrix load_code(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CodeError("cannot open code file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code_text(buf.str());
}

void save_code(const TriorthogonalMatrix &g,
               const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CodeError("cannot open file for writing: " + path.string());
  out << format_code_text(g);
  if (!out)
    throw CodeError("write failed: " + path.string());
}

} // namespace mpqc::codes
