#include "lefloc/complexlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lefloc {

MatQ mat_mul(const MatQ& x, const MatQ& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch in product");
    MatQ r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Rat& xik = x.at(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

MatQ mat_add(const MatQ& x, const MatQ& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("matrix shape mismatch in sum");
    MatQ r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

MatQ mat_transpose(const MatQ& x) {
    MatQ r(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

bool mat_is_zero(const MatQ& x) {
    return std::all_of(x.a.begin(), x.a.end(), [](const Rat& v) { return v == 0; });
}

Rat mat_trace(const MatQ& x) {
    if (x.rows != x.cols) throw std::invalid_argument("trace of a non-square matrix");
    Rat t(0);
    for (std::size_t i = 0; i < x.rows; ++i) t += x.at(i, i);
    return t;
}

std::vector<std::size_t> mat_rref(MatQ& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m.at(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = m.at(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) /= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t mat_rank(MatQ m) { return mat_rref(m).size(); }

MatQ mat_nullspace(const MatQ& m) {
    MatQ r = m;
    auto pivots = mat_rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    MatQ basis(m.cols, free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        basis.at(free_cols[j], j) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis.at(pivots[i], j) = -r.at(i, free_cols[j]);
    }
    return basis;
}

std::optional<std::vector<Rat>> mat_solve(const MatQ& A, const std::vector<Rat>& rhs) {
    if (rhs.size() != A.rows) throw std::invalid_argument("solve shape mismatch");
    MatQ aug(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = rhs[i];
    }
    auto pivots = mat_rref(aug);
    std::vector<Rat> x(A.cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == A.cols) return std::nullopt;  // 0 == 1 row
        x[pivots[i]] = aug.at(i, A.cols);
    }
    return x;
}

namespace {

void require_shapes(const FiniteComplex& c, const ComplexEndomorphism* t) {
    if (c.dims.empty()) throw std::invalid_argument("complex has no degrees");
    for (auto n : c.dims)
        if (n < 0) throw std::invalid_argument("negative dimension");
    if (c.differentials.size() + 1 != c.dims.size())
        throw std::invalid_argument("expected one differential per adjacent degree pair");
    for (std::size_t k = 0; k + 1 < c.dims.size(); ++k) {
        const MatQ& p = c.differentials[k];
        if (p.rows != static_cast<std::size_t>(c.dims[k + 1]) ||
            p.cols != static_cast<std::size_t>(c.dims[k]))
            throw std::invalid_argument("differential shape mismatch");
    }
    if (!t) return;
    if (t->maps.size() != c.dims.size())
        throw std::invalid_argument("expected one endomorphism block per degree");
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        const MatQ& m = t->maps[k];
        std::size_t n = static_cast<std::size_t>(c.dims[k]);
        if (m.rows != n || m.cols != n)
            throw std::invalid_argument("endomorphism block shape mismatch");
    }
}

// ker P_k, with the top degree's missing differential read as the zero map.
MatQ kernel_basis(const FiniteComplex& c, std::size_t k) {
    std::size_t n = static_cast<std::size_t>(c.dims[k]);
    if (k + 1 >= c.dims.size()) return MatQ::identity(n);
    return mat_nullspace(c.differentials[k]);
}

std::vector<Rat> column(const MatQ& m, std::size_t j) {
    std::vector<Rat> v(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
    return v;
}

// Greedy column selection: keeps those that enlarge the span.
struct SpanBuilder {
    MatQ cols;  // n x r
    explicit SpanBuilder(std::size_t n) : cols(n, 0) {}

    bool try_add(const std::vector<Rat>& v) {
        MatQ wider(cols.rows, cols.cols + 1);
        for (std::size_t i = 0; i < cols.rows; ++i) {
            for (std::size_t j = 0; j < cols.cols; ++j) wider.at(i, j) = cols.at(i, j);
            wider.at(i, cols.cols) = v[i];
        }
        if (mat_rank(wider) == cols.cols) return false;
        cols = std::move(wider);
        return true;
    }
};

// Trace of the map induced by T_k on ker P_k / im P_{k-1}: extend an image
// basis to a kernel basis and read the extension-block diagonal.
Rat induced_trace(const FiniteComplex& c, const ComplexEndomorphism& t, std::size_t k) {
    std::size_t n = static_cast<std::size_t>(c.dims[k]);
    MatQ ker = kernel_basis(c, k);

    SpanBuilder span(n);
    if (k > 0) {
        const MatQ& prev = c.differentials[k - 1];
        for (std::size_t j = 0; j < prev.cols; ++j) span.try_add(column(prev, j));
    }
    std::vector<std::size_t> ext_pos;
    for (std::size_t j = 0; j < ker.cols; ++j)
        if (span.try_add(column(ker, j))) ext_pos.push_back(span.cols.cols - 1);

    Rat trace(0);
    for (auto pos : ext_pos) {
        std::vector<Rat> image = column(mat_mul(t.maps[k], span.cols), pos);
        auto coords = mat_solve(span.cols, image);
        if (!coords)
            throw std::runtime_error("endomorphism does not preserve the kernel");
        trace += (*coords)[pos];
    }
    return trace;
}

using DMat = std::vector<std::vector<double>>;

DMat to_double(const MatQ& m) {
    DMat d(m.rows, std::vector<double>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            d[i][j] = static_cast<double>(m.at(i, j));
    return d;
}

double offdiag_norm(const DMat& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
}

struct Eigen {
    std::vector<double> values;
    DMat vectors;  // vectors[i] is the i-th ORTHONORMAL eigenvector
};

// Cyclic Jacobi with a hard sweep cap; quadratic convergence makes the cap
// generous for the matrix sizes this lab handles.
Eigen jacobi_eigen(DMat a) {
    const std::size_t n = a.size();
    const double tol = 1e-12;
    const int sweep_cap = 100;
    DMat v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    int sweep = 0;
    while (n > 1 && offdiag_norm(a) >= tol) {
        if (sweep++ >= sweep_cap)
            throw std::runtime_error("eigensolver did not converge within the sweep cap");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double tt = (theta >= 0 ? 1.0 : -1.0) /
                            (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double cc = 1.0 / std::sqrt(tt * tt + 1.0);
                double ss = tt * cc;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = cc * aip - ss * aiq;
                    a[i][q] = ss * aip + cc * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = cc * api - ss * aqi;
                    a[q][i] = ss * api + cc * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = cc * vip - ss * viq;
                    v[i][q] = ss * vip + cc * viq;
                }
            }
    }
    Eigen e;
    e.values.resize(n);
    e.vectors.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        e.values[i] = a[i][i];
        for (std::size_t j = 0; j < n; ++j) e.vectors[i][j] = v[j][i];
    }
    return e;
}

std::vector<double> positive_spectrum(const MatQ& m) {
    auto e = jacobi_eigen(to_double(m));
    std::vector<double> pos;
    for (double v : e.values)
        if (v > 1e-9) pos.push_back(v);
    std::sort(pos.begin(), pos.end());
    return pos;
}

}  // namespace

bool validate(const FiniteComplex& c, const ComplexEndomorphism& t) {
    require_shapes(c, &t);
    for (std::size_t k = 0; k + 1 < c.differentials.size(); ++k)
        if (!mat_is_zero(mat_mul(c.differentials[k + 1], c.differentials[k])))
            return false;
    for (std::size_t k = 0; k < c.differentials.size(); ++k) {
        MatQ lhs = mat_mul(c.differentials[k], t.maps[k]);
        MatQ rhs = mat_mul(t.maps[k + 1], c.differentials[k]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

std::vector<int> cohomology_dims(const FiniteComplex& c) {
    require_shapes(c, nullptr);
    std::vector<int> h(c.dims.size());
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        std::size_t ker = k + 1 < c.dims.size()
                              ? static_cast<std::size_t>(c.dims[k]) - mat_rank(c.differentials[k])
                              : static_cast<std::size_t>(c.dims[k]);
        std::size_t im = k > 0 ? mat_rank(c.differentials[k - 1]) : 0;
        h[k] = static_cast<int>(ker - im);
    }
    return h;
}

BSeries lefschetz_poly(const FiniteComplex& c, const ComplexEndomorphism& t) {
    require_shapes(c, &t);
    BSeries L;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        Rat tr = induced_trace(c, t, k);
        if (tr != 0) L[static_cast<std::int64_t>(k)] = tr;
    }
    return L;
}

double heat_supertrace(const FiniteComplex& c, const ComplexEndomorphism& t,
                       double time, double b) {
    require_shapes(c, &t);
    if (!(time > 0)) throw std::invalid_argument("time must be positive");
    double acc = 0.0;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        std::size_t n = static_cast<std::size_t>(c.dims[k]);
        if (n == 0) continue;
        MatQ delta(n, n);
        if (k + 1 < c.dims.size()) {
            const MatQ& p = c.differentials[k];
            delta = mat_add(delta, mat_mul(mat_transpose(p), p));
        }
        if (k > 0) {
            const MatQ& p = c.differentials[k - 1];
            delta = mat_add(delta, mat_mul(p, mat_transpose(p)));
        }
        Eigen e = jacobi_eigen(to_double(delta));
        DMat td = to_double(t.maps[k]);
        double bk = std::pow(b, static_cast<double>(k));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& vi = e.vectors[i];
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                double w = 0.0;
                for (std::size_t s = 0; s < n; ++s) w += td[r][s] * vi[s];
                dot += w * vi[r];
            }
            acc += bk * std::exp(-time * e.values[i]) * dot;
        }
    }
    return acc;
}

bool supersymmetry_check(const FiniteComplex& c) {
    require_shapes(c, nullptr);
    for (const MatQ& p : c.differentials) {
        auto lo = positive_spectrum(mat_mul(mat_transpose(p), p));
        auto hi = positive_spectrum(mat_mul(p, mat_transpose(p)));
        if (lo.size() != hi.size()) return false;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (std::fabs(lo[i] - hi[i]) > 1e-9) return false;
    }
    return true;
}

std::pair<FiniteComplex, ComplexEndomorphism> tensor_product(
    const FiniteComplex& c1, const ComplexEndomorphism& t1,
    const FiniteComplex& c2, const ComplexEndomorphism& t2) {
    require_shapes(c1, &t1);
    require_shapes(c2, &t2);
    const std::size_t N1 = c1.dims.size() - 1, N2 = c2.dims.size() - 1;
    const std::size_t N = N1 + N2;

    // Block layout: degree k concatenates (i, k-i) blocks in increasing i.
    auto blocks_of = [&](std::size_t k) {
        std::vector<std::pair<std::size_t, std::size_t>> blocks;
        for (std::size_t i = (k > N2 ? k - N2 : 0); i <= std::min(k, N1); ++i)
            blocks.emplace_back(i, k - i);
        return blocks;
    };
    auto dim1 = [&](std::size_t i) { return static_cast<std::size_t>(c1.dims[i]); };
    auto dim2 = [&](std::size_t j) { return static_cast<std::size_t>(c2.dims[j]); };
    auto offset_of = [&](std::size_t k, std::size_t i) {
        std::size_t off = 0;
        for (auto [bi, bj] : blocks_of(k)) {
            if (bi == i) return off;
            off += dim1(bi) * dim2(bj);
        }
        throw std::logic_error("block not present in degree");
    };

    FiniteComplex c;
    ComplexEndomorphism t;
    for (std::size_t k = 0; k <= N; ++k) {
        std::size_t total = 0;
        for (auto [i, j] : blocks_of(k)) total += dim1(i) * dim2(j);
        c.dims.push_back(static_cast<int>(total));
    }

    for (std::size_t k = 0; k < N; ++k) {
        MatQ d(static_cast<std::size_t>(c.dims[k + 1]), static_cast<std::size_t>(c.dims[k]));
        for (auto [i, j] : blocks_of(k)) {
            std::size_t src = offset_of(k, i);
            if (i < N1) {
                const MatQ& p = c1.differentials[i];
                std::size_t dst = offset_of(k + 1, i + 1);
                for (std::size_t r = 0; r < p.rows; ++r)
                    for (std::size_t s = 0; s < p.cols; ++s) {
                        if (p.at(r, s) == 0) continue;
                        for (std::size_t bb = 0; bb < dim2(j); ++bb)
                            d.at(dst + r * dim2(j) + bb, src + s * dim2(j) + bb) = p.at(r, s);
                    }
            }
            if (j < N2) {
                const MatQ& p = c2.differentials[j];
                std::size_t dst = offset_of(k + 1, i);
                Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
                for (std::size_t aa = 0; aa < dim1(i); ++aa)
                    for (std::size_t r = 0; r < p.rows; ++r)
                        for (std::size_t s = 0; s < p.cols; ++s) {
                            if (p.at(r, s) == 0) continue;
                            d.at(dst + aa * p.rows + r, src + aa * p.cols + s) =
                                sign * p.at(r, s);
                        }
            }
        }
        c.differentials.push_back(std::move(d));
    }

    for (std::size_t k = 0; k <= N; ++k) {
        MatQ e(static_cast<std::size_t>(c.dims[k]), static_cast<std::size_t>(c.dims[k]));
        for (auto [i, j] : blocks_of(k)) {
            std::size_t off = offset_of(k, i);
            const MatQ& x = t1.maps[i];
            const MatQ& y = t2.maps[j];
            for (std::size_t a1 = 0; a1 < x.rows; ++a1)
                for (std::size_t a2 = 0; a2 < x.cols; ++a2) {
                    if (x.at(a1, a2) == 0) continue;
                    for (std::size_t b1 = 0; b1 < y.rows; ++b1)
                        for (std::size_t b2 = 0; b2 < y.cols; ++b2)
                            e.at(off + a1 * y.rows + b1, off + a2 * y.cols + b2) =
                                x.at(a1, a2) * y.at(b1, b2);
                }
        }
        t.maps.push_back(std::move(e));
    }
    return {std::move(c), std::move(t)};
}

bool kunneth_check(const FiniteComplex& c1, const ComplexEndomorphism& t1,
                   const FiniteComplex& c2, const ComplexEndomorphism& t2,
                   double b, double time) {
    auto [c, t] = tensor_product(c1, t1, c2, t2);
    if (!validate(c, t)) return false;
    BSeries graded = bseries_mul(lefschetz_poly(c1, t1), lefschetz_poly(c2, t2));
    if (lefschetz_poly(c, t) != graded) return false;
    double product = heat_supertrace(c1, t1, time, b) * heat_supertrace(c2, t2, time, b);
    return std::fabs(heat_supertrace(c, t, time, b) - product) <= 1e-8;
}

std::pair<FiniteComplex, ComplexEndomorphism> dual_pair(
    const FiniteComplex& c, const ComplexEndomorphism& t) {
    require_shapes(c, &t);
    const std::size_t N = c.dims.size() - 1;
    FiniteComplex d;
    ComplexEndomorphism s;
    for (std::size_t k = 0; k <= N; ++k) {
        d.dims.push_back(c.dims[N - k]);
        s.maps.push_back(mat_transpose(t.maps[N - k]));
    }
    for (std::size_t k = 0; k < N; ++k)
        d.differentials.push_back(mat_transpose(c.differentials[N - 1 - k]));
    return {std::move(d), std::move(s)};
}

bool duality_check(const FiniteComplex& c, const ComplexEndomorphism& t) {
    auto [d, s] = dual_pair(c, t);
    Rat lhs = bseries_eval(lefschetz_poly(c, t), Rat(-1));
    Rat rhs = bseries_eval(lefschetz_poly(d, s), Rat(-1));
    if ((c.dims.size() - 1) % 2 != 0) rhs = -rhs;
    return lhs == rhs;
}

}  // namespace lefloc
