// Copyright 2026 The stilde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stilde/ringlinalg.h"

#include <algorithm>
#include <sstream>
#include <utility>

namespace stilde {

// ---------------------------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw ValidationError("IntMatrix: ragged initializer");
        }
        for (long v : r) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m(k, k) = 1;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix &other) const {
    if (cols_ != other.rows_) {
        throw ValidationError("IntMatrix: dimension mismatch in product");
    }
    IntMatrix out(rows_, other.cols_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t k = 0; k < cols_; k++) {
            const BigInt &a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (size_t j = 0; j < other.cols_; j++) {
                out(i, j) += a * other(k, j);
            }
        }
    }
    return out;
}

bool IntMatrix::operator==(const IntMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

bool IntMatrix::is_diagonal() const {
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            if (i != j && (*this)(i, j) != 0) {
                return false;
            }
        }
    }
    return true;
}

BigInt IntMatrix::determinant() const {
    if (rows_ != cols_) {
        throw ValidationError("determinant of a non-square matrix");
    }
    size_t n = rows_;
    if (n == 0) {
        return 1;
    }
    IntMatrix m = *this;
    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; k++) {
        if (m(k, k) == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0) {
                swap_row++;
            }
            if (swap_row == n) {
                return 0;
            }
            for (size_t j = 0; j < n; j++) {
                std::swap(m(k, j), m(swap_row, j));
            }
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; i++) {
            for (size_t j = k + 1; j < n; j++) {
                BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::string IntMatrix::str() const {
    std::stringstream out;
    out << "[";
    for (size_t i = 0; i < rows_; i++) {
        out << (i ? ", [" : "[");
        for (size_t j = 0; j < cols_; j++) {
            out << (j ? ", " : "") << (*this)(i, j).get_str();
        }
        out << "]";
    }
    out << "]";
    return out.str();
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
    std::vector<BigInt> out;
    for (size_t k = 0; k < std::min(D.rows(), D.cols()); k++) {
        out.push_back(D(k, k));
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Smith normal form over Z.

namespace {

struct BigSmithState {
    IntMatrix D, U, V;

    void swap_rows(size_t a, size_t b) {
        for (size_t j = 0; j < D.cols(); j++) {
            std::swap(D(a, j), D(b, j));
        }
        for (size_t j = 0; j < U.cols(); j++) {
            std::swap(U(a, j), U(b, j));
        }
    }
    void negate_row(size_t k) {
        for (size_t j = 0; j < D.cols(); j++) {
            D(k, j) = -D(k, j);
        }
        for (size_t j = 0; j < U.cols(); j++) {
            U(k, j) = -U(k, j);
        }
    }
    void swap_cols(size_t a, size_t b) {
        for (size_t i = 0; i < D.rows(); i++) {
            std::swap(D(i, a), D(i, b));
        }
        for (size_t i = 0; i < V.rows(); i++) {
            std::swap(V(i, a), V(i, b));
        }
    }
    // rows (p, q) <- [[s, t], [u, v]] * rows (p, q).
    void mix_rows(size_t p, size_t q, const BigInt &s, const BigInt &t, const BigInt &u, const BigInt &v) {
        auto apply = [&](IntMatrix &m) {
            for (size_t j = 0; j < m.cols(); j++) {
                BigInt a = m(p, j), b = m(q, j);
                m(p, j) = s * a + t * b;
                m(q, j) = u * a + v * b;
            }
        };
        apply(D);
        apply(U);
    }
    // cols (p, q) <- cols (p, q) * [[s, u], [t, v]]: col_p' = s col_p + t col_q, col_q' = u col_p + v col_q.
    void mix_cols(size_t p, size_t q, const BigInt &s, const BigInt &t, const BigInt &u, const BigInt &v) {
        auto apply = [&](IntMatrix &m) {
            for (size_t i = 0; i < m.rows(); i++) {
                BigInt a = m(i, p), b = m(i, q);
                m(i, p) = s * a + t * b;
                m(i, q) = u * a + v * b;
            }
        };
        apply(D);
        apply(V);
    }
    void gcd_rows(size_t k, size_t i, size_t col) {
        BigInt a = D(k, col), b = D(i, col);
        if (b == 0) {
            return;
        }
        if (a != 0 && b % a == 0) {
            mix_rows(k, i, 1, 0, -(b / a), 1);
            return;
        }
        BigInt g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mix_rows(k, i, s, t, -(b / g), a / g);
    }
    void gcd_cols(size_t k, size_t j, size_t row) {
        BigInt a = D(row, k), b = D(row, j);
        if (b == 0) {
            return;
        }
        if (a != 0 && b % a == 0) {
            mix_cols(k, j, 1, 0, -(b / a), 1);
            return;
        }
        BigInt g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mix_cols(k, j, s, t, -(b / g), a / g);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix &a) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw ValidationError("smith_normal_form: empty matrix");
    }
    BigSmithState st{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
    size_t r = a.rows(), c = a.cols(), m = std::min(r, c);
    for (size_t k = 0; k < m; k++) {
        while (true) {
            // Pivot: smallest nonzero absolute value in the trailing block.
            bool found = false;
            size_t pi = 0, pj = 0;
            BigInt best;
            for (size_t i = k; i < r; i++) {
                for (size_t j = k; j < c; j++) {
                    const BigInt &v = st.D(i, j);
                    if (v != 0 && (!found || abs(v) < best)) {
                        found = true;
                        best = abs(v);
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (!found) {
                goto finished;
            }
            if (pi != k) {
                st.swap_rows(pi, k);
            }
            if (pj != k) {
                st.swap_cols(pj, k);
            }
            for (size_t i = k + 1; i < r; i++) {
                st.gcd_rows(k, i, k);
            }
            for (size_t j = k + 1; j < c; j++) {
                st.gcd_cols(k, j, k);
            }
            bool clean = true;
            for (size_t i = k + 1; i < r && clean; i++) {
                clean = st.D(i, k) == 0;
            }
            if (clean) {
                break;
            }
        }
    }
finished:
    for (size_t k = 0; k < m; k++) {
        if (st.D(k, k) < 0) {
            st.negate_row(k);
        }
    }
    // Divisibility chain, zeros last.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < m; i++) {
            for (size_t j = i + 1; j < m; j++) {
                BigInt x = st.D(i, i), y = st.D(j, j);
                if (x == 0 && y != 0) {
                    st.swap_rows(i, j);
                    st.swap_cols(i, j);
                    changed = true;
                    continue;
                }
                if (x == 0 || y % x == 0) {
                    continue;
                }
                // [[x, 0], [0, y]] -> [[g, 0], [0, xy/g]].
                st.mix_cols(i, j, 1, 1, 0, 1);
                BigInt g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                st.mix_rows(i, j, s, t, -(y / g), x / g);
                BigInt f = st.D(i, j) / g;
                st.mix_cols(i, j, 1, 0, -f, 1);
                for (size_t q : {i, j}) {
                    if (st.D(q, q) < 0) {
                        st.negate_row(q);
                    }
                }
                changed = true;
            }
        }
    }
    return SmithDecomposition{std::move(st.U), std::move(st.D), std::move(st.V)};
}

// ---------------------------------------------------------------------------------------------
// Integer helpers.

int64_t gcd64(int64_t a, int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    return a / gcd64(a, b) * b;
}

int64_t lcm_of(const std::vector<int64_t> &values) {
    int64_t r = 1;
    for (int64_t v : values) {
        r = lcm64(r, v);
    }
    return r;
}

int64_t mod64(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t xgcd64(int64_t a, int64_t b, int64_t &s, int64_t &t) {
    int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

int64_t inverse_mod(int64_t a, int64_t m) {
    int64_t s, t;
    int64_t g = xgcd64(mod64(a, m), m, s, t);
    if (g != 1) {
        throw ValidationError("inverse_mod: not a unit");
    }
    return mod64(s, m);
}

int64_t normalizing_unit(int64_t a, int64_t m) {
    a = mod64(a, m);
    if (a == 0) {
        return 1;
    }
    int64_t g = gcd64(a, m);
    int64_t mg = m / g;
    int64_t w = mg == 1 ? 0 : inverse_mod(a / g, mg);
    for (int64_t k = 0; k < g; k++) {
        int64_t u = mod64(w + k * mg, m);
        if (gcd64(u, m) == 1) {
            return u;
        }
    }
    throw ValidationError("normalizing_unit: no unit found");
}

Zmod::Zmod(int64_t modulus) : m_(modulus) {
    if (modulus < 1) {
        throw ValidationError("Zmod: modulus must be positive");
    }
    if (modulus < (int64_t(1) << 16)) {
        small_ = true;
        magic_ = UINT64_C(0xFFFFFFFFFFFFFFFF) / (uint64_t)modulus + 1;
    }
}

ModMatrix ModMatrix::identity(size_t n) {
    ModMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.at(k, k) = 1;
    }
    return m;
}

// ---------------------------------------------------------------------------------------------
// Smith normal form over Z_D.

namespace {

class ModSmithEngine {
   public:
    ModSmithEngine(ModMatrix a, int64_t modulus, SmithTracking tracking)
        : zm_(modulus), a_(std::move(a)), tracking_(tracking) {
        if (tracking.u) {
            u_ = ModMatrix::identity(a_.rows);
        }
        if (tracking.v) {
            // Stored transposed so that column operations are contiguous.
            vt_ = ModMatrix::identity(a_.cols);
        }
        if (tracking.v_inv) {
            v_inv_ = ModMatrix::identity(a_.cols);
        }
        for (auto &x : a_.data) {
            x = zm_.reduce(x);
        }
    }

    ModSmith run() {
        size_t r = a_.rows, c = a_.cols, m = std::min(r, c);
        for (size_t k = 0; k < m; k++) {
            if (!place_pivot(k)) {
                break;
            }
            while (true) {
                for (size_t i = k + 1; i < r; i++) {
                    if (a_.at(i, k) != 0) {
                        row_gcd(k, i);
                    }
                }
                for (size_t j = k + 1; j < c; j++) {
                    if (a_.at(k, j) != 0) {
                        col_gcd(k, j);
                    }
                }
                bool clean = true;
                for (size_t i = k + 1; i < r && clean; i++) {
                    clean = a_.at(i, k) == 0;
                }
                if (clean) {
                    break;
                }
            }
        }
        // Normalize each diagonal entry to gcd(entry, D).
        for (size_t k = 0; k < m; k++) {
            int64_t d = a_.at(k, k);
            if (d != 0) {
                int64_t u = normalizing_unit(d, zm_.modulus());
                if (u != 1) {
                    scale_row(k, u);
                }
            }
        }
        fix_divisibility(m);
        ModSmith out;
        out.modulus = zm_.modulus();
        out.rows = r;
        out.cols = c;
        for (size_t k = 0; k < m; k++) {
            out.diagonal.push_back(a_.at(k, k));
        }
        if (tracking_.u) {
            out.U = std::move(u_);
        }
        if (tracking_.v) {
            ModMatrix v(c, c);
            for (size_t i = 0; i < c; i++) {
                for (size_t j = 0; j < c; j++) {
                    v.at(i, j) = vt_.at(j, i);
                }
            }
            out.V = std::move(v);
        }
        if (tracking_.v_inv) {
            out.V_inv = std::move(v_inv_);
        }
        return out;
    }

   private:
    static int64_t chain_value(int64_t d, int64_t modulus) {
        return d == 0 ? modulus : d;
    }

    bool place_pivot(size_t k) {
        size_t r = a_.rows, c = a_.cols;
        // First column (in order) holding a nonzero entry; in it, the entry with the smallest
        // gcd with D (units first).
        for (size_t j = k; j < c; j++) {
            size_t best_row = r;
            int64_t best_g = 0;
            for (size_t i = k; i < r; i++) {
                int64_t v = a_.at(i, j);
                if (v == 0) {
                    continue;
                }
                int64_t g = gcd64(v, zm_.modulus());
                if (best_row == r || g < best_g) {
                    best_row = i;
                    best_g = g;
                    if (g == 1) {
                        break;
                    }
                }
            }
            if (best_row != r) {
                if (best_row != k) {
                    swap_rows(best_row, k);
                }
                if (j != k) {
                    swap_cols(j, k);
                }
                return true;
            }
        }
        return false;
    }

    void swap_rows(size_t p, size_t q) {
        std::swap_ranges(a_.row(p), a_.row(p) + a_.cols, a_.row(q));
        if (tracking_.u) {
            std::swap_ranges(u_.row(p), u_.row(p) + u_.cols, u_.row(q));
        }
    }

    void swap_cols(size_t p, size_t q) {
        for (size_t i = 0; i < a_.rows; i++) {
            std::swap(a_.at(i, p), a_.at(i, q));
        }
        if (tracking_.v) {
            std::swap_ranges(vt_.row(p), vt_.row(p) + vt_.cols, vt_.row(q));
        }
        if (tracking_.v_inv) {
            std::swap_ranges(v_inv_.row(p), v_inv_.row(p) + v_inv_.cols, v_inv_.row(q));
        }
    }

    void scale_row(size_t k, int64_t u) {
        int64_t *row = a_.row(k);
        for (size_t j = 0; j < a_.cols; j++) {
            row[j] = zm_.mul(row[j], u);
        }
        if (tracking_.u) {
            int64_t *ur = u_.row(k);
            for (size_t j = 0; j < u_.cols; j++) {
                ur[j] = zm_.mul(ur[j], u);
            }
        }
    }

    // (x, y) <- (s x + t y, p x + q y) on two contiguous arrays.
    void mix(int64_t *x, int64_t *y, size_t n, int64_t s, int64_t t, int64_t p, int64_t q) {
        for (size_t j = 0; j < n; j++) {
            int64_t a = x[j], b = y[j];
            if (a == 0 && b == 0) {
                continue;
            }
            x[j] = zm_.lin(s, a, t, b);
            y[j] = zm_.lin(p, a, q, b);
        }
    }

    // y <- y - f x.
    void axpy(const int64_t *x, int64_t *y, size_t n, int64_t f) {
        int64_t nf = zm_.neg(zm_.reduce(f));
        for (size_t j = 0; j < n; j++) {
            if (x[j] != 0) {
                y[j] = zm_.add(y[j], zm_.mul(nf, x[j]));
            }
        }
    }

    // Row transform on rows (k, i) so that entry (i, k) vanishes.
    void row_gcd(size_t k, size_t i) {
        int64_t a = a_.at(k, k), b = a_.at(i, k);
        int64_t mod = zm_.modulus();
        if (a != 0 && gcd64(a, mod) == 1) {
            int64_t f = zm_.mul(b, inverse_mod(a, mod));
            axpy(a_.row(k), a_.row(i), a_.cols, f);
            if (tracking_.u) {
                axpy(u_.row(k), u_.row(i), u_.cols, f);
            }
            return;
        }
        if (a != 0 && b % a == 0) {
            int64_t f = b / a;
            axpy(a_.row(k), a_.row(i), a_.cols, f);
            if (tracking_.u) {
                axpy(u_.row(k), u_.row(i), u_.cols, f);
            }
            return;
        }
        int64_t s, t;
        int64_t g = xgcd64(a, b, s, t);
        int64_t p = zm_.reduce(-(b / g)), q = zm_.reduce(a / g);
        s = zm_.reduce(s);
        t = zm_.reduce(t);
        mix(a_.row(k), a_.row(i), a_.cols, s, t, p, q);
        if (tracking_.u) {
            mix(u_.row(k), u_.row(i), u_.cols, s, t, p, q);
        }
    }

    // Column transform on columns (k, j) so that entry (k, j) vanishes.
    // cols (k, j) <- (s col_k + t col_j, p col_k + q col_j) with [[s, t], [p, q]] of determinant 1.
    // V <- V M, V^{-1} <- M^{-1} V^{-1}; in terms of rows of V^{-1}: row_k' = q row_k - p row_j,
    // row_j' = -t row_k + s row_j.
    void apply_cols(size_t k, size_t j, int64_t s, int64_t t, int64_t p, int64_t q) {
        for (size_t i = 0; i < a_.rows; i++) {
            int64_t x = a_.at(i, k), y = a_.at(i, j);
            if (x == 0 && y == 0) {
                continue;
            }
            a_.at(i, k) = zm_.lin(s, x, t, y);
            a_.at(i, j) = zm_.lin(p, x, q, y);
        }
        if (tracking_.v) {
            mix(vt_.row(k), vt_.row(j), vt_.cols, s, t, p, q);
        }
        if (tracking_.v_inv) {
            mix(v_inv_.row(k), v_inv_.row(j), v_inv_.cols, q, zm_.neg(p), zm_.neg(t), s);
        }
    }

    void col_gcd(size_t k, size_t j) {
        int64_t a = a_.at(k, k), b = a_.at(k, j);
        int64_t mod = zm_.modulus();
        int64_t f = -1;
        if (a != 0 && gcd64(a, mod) == 1) {
            f = zm_.mul(b, inverse_mod(a, mod));
        } else if (a != 0 && b % a == 0) {
            f = b / a;
        }
        if (f >= 0) {
            // col_j <- col_j - f col_k.
            int64_t nf = zm_.neg(f);
            for (size_t i = 0; i < a_.rows; i++) {
                int64_t x = a_.at(i, k);
                if (x != 0) {
                    a_.at(i, j) = zm_.add(a_.at(i, j), zm_.mul(nf, x));
                }
            }
            if (tracking_.v) {
                axpy(vt_.row(k), vt_.row(j), vt_.cols, f);
            }
            if (tracking_.v_inv) {
                // row_k <- row_k + f row_j.
                axpy(v_inv_.row(j), v_inv_.row(k), v_inv_.cols, zm_.neg(f));
            }
            return;
        }
        int64_t s, t;
        int64_t g = xgcd64(a, b, s, t);
        apply_cols(k, j, zm_.reduce(s), zm_.reduce(t), zm_.reduce(-(b / g)), zm_.reduce(a / g));
    }

    void fix_divisibility(size_t m) {
        int64_t mod = zm_.modulus();
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < m; i++) {
                for (size_t j = i + 1; j < m; j++) {
                    int64_t x = chain_value(a_.at(i, i), mod);
                    int64_t y = chain_value(a_.at(j, j), mod);
                    if (y % x == 0) {
                        continue;
                    }
                    if (x % y == 0) {
                        swap_rows(i, j);
                        swap_cols(i, j);
                        changed = true;
                        continue;
                    }
                    // [[x, 0], [0, y]] -> [[g, 0], [0, lcm]].
                    apply_cols(i, j, 1, 1, 0, 1);
                    row_gcd(i, j);
                    int64_t g = a_.at(i, i);
                    int64_t off = a_.at(i, j);
                    int64_t f = (g == 0) ? 0 : off / g;
                    if (f != 0) {
                        int64_t nf = zm_.neg(zm_.reduce(f));
                        for (size_t r = 0; r < a_.rows; r++) {
                            int64_t v = a_.at(r, i);
                            if (v != 0) {
                                a_.at(r, j) = zm_.add(a_.at(r, j), zm_.mul(nf, v));
                            }
                        }
                        if (tracking_.v) {
                            axpy(vt_.row(i), vt_.row(j), vt_.cols, f);
                        }
                        if (tracking_.v_inv) {
                            axpy(v_inv_.row(j), v_inv_.row(i), v_inv_.cols, zm_.neg(zm_.reduce(f)));
                        }
                    }
                    for (size_t q : {i, j}) {
                        int64_t d = a_.at(q, q);
                        if (d != 0) {
                            int64_t u = normalizing_unit(d, mod);
                            if (u != 1) {
                                scale_row(q, u);
                            }
                        }
                    }
                    changed = true;
                }
            }
        }
    }

    Zmod zm_;
    ModMatrix a_;
    SmithTracking tracking_;
    ModMatrix u_, vt_, v_inv_;
};

}  // namespace

ModSmith smith_normal_form_mod(ModMatrix a, int64_t modulus, SmithTracking tracking) {
    ModSmithEngine engine(std::move(a), modulus, tracking);
    return engine.run();
}

// ---------------------------------------------------------------------------------------------
// Abelian groups.

BigInt AbelianGroupStructure::order() const {
    BigInt r = 1;
    for (int64_t f : invariant_factors) {
        r *= f;
    }
    return r;
}

std::optional<std::vector<int64_t>> AbelianGroupStructure::coordinates(const std::vector<int64_t> &v) const {
    if (v.size() != moduli.size()) {
        throw ValidationError("coordinates: dimension mismatch");
    }
    if (!classifier) {
        for (size_t j = 0; j < v.size(); j++) {
            if (mod64(v[j], moduli[j]) != 0) {
                return std::nullopt;
            }
        }
        return std::vector<int64_t>{};
    }
    return classifier->coordinates(v);
}

std::vector<int64_t> AbelianGroupStructure::element(const std::vector<int64_t> &coords) const {
    if (coords.size() != generators.size()) {
        throw ValidationError("element: coordinate count mismatch");
    }
    std::vector<int64_t> out(moduli.size(), 0);
    for (size_t k = 0; k < coords.size(); k++) {
        int64_t c = mod64(coords[k], invariant_factors[k]);
        if (c == 0) {
            continue;
        }
        for (size_t j = 0; j < moduli.size(); j++) {
            out[j] = mod64(out[j] + (__int128)c * generators[k][j] % moduli[j], moduli[j]);
        }
    }
    return out;
}

namespace {

// Solves c * Hs = target (over Z_D) through a tracked Smith form of Hs, then maps c into
// quotient coordinates through V2.
class QuotientClassifier : public AbelianGroupStructure::Classifier {
   public:
    int64_t modulus = 1;
    std::vector<int64_t> scale;  // D / m_j
    std::vector<int64_t> moduli;
    size_t num_gens = 0;
    ModSmith first;   // Smith form of the scaled generator matrix, with U and V
    ModMatrix v2;     // a x a column transform of the relation Smith form
    std::vector<int64_t> factors;        // invariant factors (kept, >= 2)
    std::vector<size_t> factor_columns;  // which columns of v2 they use

    std::optional<std::vector<int64_t>> preimage(const std::vector<int64_t> &v) const {
        Zmod zm(modulus);
        size_t n = moduli.size();
        std::vector<int64_t> y(n);
        for (size_t j = 0; j < n; j++) {
            y[j] = zm.mul(mod64(v[j], moduli[j]), scale[j]);
        }
        // z = y * V.
        std::vector<int64_t> z(n, 0);
        for (size_t i = 0; i < n; i++) {
            if (y[i] == 0) {
                continue;
            }
            const int64_t *vr = first.V.row(i);
            for (size_t j = 0; j < n; j++) {
                if (vr[j] != 0) {
                    z[j] = zm.add(z[j], zm.mul(y[i], vr[j]));
                }
            }
        }
        size_t a = num_gens;
        size_t m = std::min(a, n);
        std::vector<int64_t> e(a, 0);
        for (size_t i = 0; i < n; i++) {
            if (i < m) {
                int64_t g = first.diagonal[i] == 0 ? modulus : first.diagonal[i];
                if (z[i] % g != 0) {
                    return std::nullopt;
                }
                e[i] = (g == modulus) ? 0 : z[i] / g;
            } else if (z[i] != 0) {
                return std::nullopt;
            }
        }
        // c = e * U.
        std::vector<int64_t> c(a, 0);
        for (size_t i = 0; i < a; i++) {
            if (e[i] == 0) {
                continue;
            }
            const int64_t *ur = first.U.row(i);
            for (size_t j = 0; j < a; j++) {
                if (ur[j] != 0) {
                    c[j] = zm.add(c[j], zm.mul(e[i], ur[j]));
                }
            }
        }
        return c;
    }

    std::optional<std::vector<int64_t>> coordinates(const std::vector<int64_t> &v) const override {
        auto c = preimage(v);
        if (!c) {
            return std::nullopt;
        }
        Zmod zm(modulus);
        std::vector<int64_t> out(factors.size(), 0);
        for (size_t k = 0; k < factors.size(); k++) {
            size_t col = factor_columns[k];
            int64_t acc = 0;
            for (size_t i = 0; i < num_gens; i++) {
                if ((*c)[i] != 0) {
                    acc = zm.add(acc, zm.mul((*c)[i], v2.at(i, col)));
                }
            }
            out[k] = acc % factors[k];
        }
        return out;
    }
};

// Kernel of a scaled matrix over Z_D, mapped into the coordinates of an inner quotient.
class KernelClassifier : public AbelianGroupStructure::Classifier {
   public:
    int64_t modulus = 1;
    std::vector<int64_t> moduli;
    ModMatrix v_inv;
    std::vector<int64_t> orders;     // g_i for every column of the Smith form
    std::vector<size_t> kept;        // indices i with g_i > 1, the coordinates of the inner group
    AbelianGroupStructure inner;

    std::optional<std::vector<int64_t>> coordinates(const std::vector<int64_t> &v) const override {
        Zmod zm(modulus);
        size_t n = moduli.size();
        std::vector<int64_t> x(n);
        for (size_t j = 0; j < n; j++) {
            x[j] = mod64(v[j], moduli[j]);
        }
        std::vector<int64_t> c;
        c.reserve(kept.size());
        size_t next_kept = 0;
        for (size_t i = 0; i < n; i++) {
            const int64_t *row = v_inv.row(i);
            int64_t y = 0;
            for (size_t j = 0; j < n; j++) {
                if (x[j] != 0 && row[j] != 0) {
                    y = zm.add(y, zm.mul(row[j], x[j]));
                }
            }
            int64_t step = modulus / orders[i];
            if (y % step != 0) {
                return std::nullopt;
            }
            if (next_kept < kept.size() && kept[next_kept] == i) {
                c.push_back(y / step);
                next_kept++;
            }
        }
        return inner.coordinates(c);
    }
};

}  // namespace

AbelianGroupStructure quotient_structure(
    const std::vector<std::vector<int64_t>> &group_gens,
    const std::vector<std::vector<int64_t>> &subgroup_gens,
    const std::vector<int64_t> &moduli) {
    size_t n = moduli.size();
    for (int64_t m : moduli) {
        if (m < 1) {
            throw ValidationError("quotient_structure: moduli must be positive");
        }
    }
    for (const auto &g : group_gens) {
        if (g.size() != n) {
            throw ValidationError("quotient_structure: generator dimension mismatch");
        }
    }
    for (const auto &g : subgroup_gens) {
        if (g.size() != n) {
            throw ValidationError("quotient_structure: subgroup generator dimension mismatch");
        }
    }
    AbelianGroupStructure out;
    out.moduli = moduli;
    size_t a = group_gens.size();
    if (a == 0 || n == 0) {
        for (const auto &s : subgroup_gens) {
            for (size_t j = 0; j < n; j++) {
                if (mod64(s[j], moduli[j]) != 0) {
                    throw ValidationError("quotient_structure: subgroup not contained in group");
                }
            }
        }
        return out;
    }
    auto cls = std::make_shared<QuotientClassifier>();
    cls->modulus = lcm_of(moduli);
    int64_t D = cls->modulus;
    Zmod zm(D);
    cls->moduli = moduli;
    cls->num_gens = a;
    for (int64_t m : moduli) {
        cls->scale.push_back(D / m);
    }
    ModMatrix hs(a, n);
    for (size_t i = 0; i < a; i++) {
        for (size_t j = 0; j < n; j++) {
            hs.at(i, j) = zm.mul(mod64(group_gens[i][j], moduli[j]), cls->scale[j]);
        }
    }
    cls->first = smith_normal_form_mod(std::move(hs), D, SmithTracking{true, true, false});
    // Relations among the generators: kernel of c -> c * Hs, then preimages of the subgroup.
    std::vector<std::vector<int64_t>> relations;
    size_t m = std::min(a, n);
    for (size_t i = 0; i < a; i++) {
        int64_t factor;
        if (i < m) {
            int64_t g = cls->first.diagonal[i] == 0 ? D : cls->first.diagonal[i];
            factor = D / g;
            if (factor == D) {
                continue;
            }
        } else {
            factor = 1;
        }
        std::vector<int64_t> rel(a);
        const int64_t *ur = cls->first.U.row(i);
        bool nonzero = false;
        for (size_t j = 0; j < a; j++) {
            rel[j] = zm.mul(factor, ur[j]);
            nonzero |= rel[j] != 0;
        }
        if (nonzero) {
            relations.push_back(std::move(rel));
        }
    }
    for (const auto &s : subgroup_gens) {
        auto c = cls->preimage(s);
        if (!c) {
            throw ValidationError("quotient_structure: subgroup not contained in group");
        }
        bool nonzero = false;
        for (int64_t v : *c) {
            nonzero |= v != 0;
        }
        if (nonzero) {
            relations.push_back(std::move(*c));
        }
    }
    ModMatrix v2_inv;
    std::vector<int64_t> diag(a, 0);
    if (relations.empty()) {
        cls->v2 = ModMatrix::identity(a);
        v2_inv = ModMatrix::identity(a);
    } else {
        ModMatrix rel(relations.size(), a);
        for (size_t i = 0; i < relations.size(); i++) {
            std::copy(relations[i].begin(), relations[i].end(), rel.row(i));
        }
        ModSmith second = smith_normal_form_mod(std::move(rel), D, SmithTracking{false, true, true});
        cls->v2 = std::move(second.V);
        v2_inv = std::move(second.V_inv);
        for (size_t i = 0; i < second.diagonal.size(); i++) {
            diag[i] = second.diagonal[i];
        }
    }
    for (size_t i = 0; i < a; i++) {
        int64_t q = diag[i] == 0 ? D : diag[i];
        if (q == 1) {
            continue;
        }
        cls->factors.push_back(q);
        cls->factor_columns.push_back(i);
        // Representative: e_i * V2^{-1} in generator coordinates, then into ambient coordinates.
        std::vector<int64_t> rep(n, 0);
        const int64_t *row = v2_inv.row(i);
        for (size_t k = 0; k < a; k++) {
            if (row[k] == 0) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                int64_t gkj = mod64(group_gens[k][j], moduli[j]);
                if (gkj != 0) {
                    rep[j] = mod64(rep[j] + (__int128)row[k] * gkj % moduli[j], moduli[j]);
                }
            }
        }
        out.generators.push_back(std::move(rep));
    }
    out.invariant_factors = cls->factors;
    out.classifier = cls;
    return out;
}

AbelianGroupStructure kernel_mod(
    const std::vector<std::vector<int64_t>> &a,
    const std::vector<int64_t> &col_moduli,
    const std::vector<int64_t> &row_moduli) {
    size_t n = col_moduli.size();
    size_t r = a.size();
    if (row_moduli.size() != r) {
        throw ValidationError("kernel_mod: row moduli count mismatch");
    }
    for (const auto &row : a) {
        if (row.size() != n) {
            throw ValidationError("kernel_mod: dimension mismatch");
        }
    }
    for (int64_t m : col_moduli) {
        if (m < 2) {
            throw ValidationError("kernel_mod: moduli must be >= 2");
        }
    }
    for (int64_t m : row_moduli) {
        if (m < 1) {
            throw ValidationError("kernel_mod: row moduli must be positive");
        }
    }
    std::vector<int64_t> all = col_moduli;
    all.insert(all.end(), row_moduli.begin(), row_moduli.end());
    int64_t D = lcm_of(all);
    Zmod zm(D);
    // Each congruence must be well defined on Z_{m_j}.
    for (size_t i = 0; i < r; i++) {
        for (size_t j = 0; j < n; j++) {
            if ((__int128)a[i][j] * col_moduli[j] % row_moduli[i] != 0) {
                throw ValidationError("kernel_mod: congruence not well defined on the column modulus");
            }
        }
    }
    auto cls = std::make_shared<KernelClassifier>();
    cls->modulus = D;
    cls->moduli = col_moduli;
    ModMatrix b(std::max<size_t>(r, 1), n);
    for (size_t i = 0; i < r; i++) {
        int64_t s = D / row_moduli[i];
        for (size_t j = 0; j < n; j++) {
            b.at(i, j) = zm.mul(mod64(a[i][j], row_moduli[i]), s);
        }
    }
    ModSmith sm = smith_normal_form_mod(std::move(b), D, SmithTracking{false, true, true});
    size_t m = std::min(sm.rows, n);
    cls->orders.assign(n, D);
    for (size_t i = 0; i < m; i++) {
        // Kernel coordinate: y_i g_i = 0, so y_i lies in (D/g_i) Z_D, a cyclic group of order g_i.
        cls->orders[i] = (sm.diagonal[i] == 0) ? D : sm.diagonal[i];
    }
    // Basis vectors b_i = (D / g_i) V e_i for g_i > 1.
    std::vector<std::vector<int64_t>> basis;
    std::vector<int64_t> inner_moduli;
    for (size_t i = 0; i < n; i++) {
        if (cls->orders[i] > 1) {
            cls->kept.push_back(i);
            inner_moduli.push_back(cls->orders[i]);
            int64_t step = D / cls->orders[i];
            std::vector<int64_t> bv(n);
            for (size_t j = 0; j < n; j++) {
                bv[j] = zm.mul(step, sm.V.at(j, i));
            }
            basis.push_back(std::move(bv));
        }
    }
    // The lift ambiguity m_j e_j expressed in kernel coordinates.
    std::vector<std::vector<int64_t>> lift;
    for (size_t j = 0; j < n; j++) {
        if (col_moduli[j] == D) {
            continue;
        }
        std::vector<int64_t> c;
        bool nonzero = false;
        for (size_t i : cls->kept) {
            int64_t y = zm.mul(col_moduli[j] % D, sm.V_inv.at(i, j));
            int64_t step = D / cls->orders[i];
            c.push_back(y / step);
            nonzero |= c.back() != 0;
        }
        if (nonzero) {
            lift.push_back(std::move(c));
        }
    }
    std::vector<std::vector<int64_t>> std_basis(inner_moduli.size(), std::vector<int64_t>(inner_moduli.size(), 0));
    for (size_t k = 0; k < inner_moduli.size(); k++) {
        std_basis[k][k] = 1;
    }
    cls->inner = quotient_structure(std_basis, lift, inner_moduli);
    cls->v_inv = std::move(sm.V_inv);

    AbelianGroupStructure out;
    out.moduli = col_moduli;
    out.invariant_factors = cls->inner.invariant_factors;
    for (const auto &g : cls->inner.generators) {
        std::vector<int64_t> x(n, 0);
        for (size_t k = 0; k < g.size(); k++) {
            if (g[k] == 0) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                x[j] = zm.add(x[j], zm.mul(g[k], basis[k][j]));
            }
        }
        for (size_t j = 0; j < n; j++) {
            x[j] %= col_moduli[j];
        }
        out.generators.push_back(std::move(x));
    }
    out.classifier = cls;
    return out;
}

AbelianGroupStructure kernel_mod(const IntMatrix &a, const std::vector<int64_t> &moduli) {
    if (moduli.size() != a.cols()) {
        throw ValidationError("kernel_mod: dimension mismatch");
    }
    std::vector<std::vector<int64_t>> rows(a.rows(), std::vector<int64_t>(a.cols()));
    std::vector<int64_t> row_moduli(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        int64_t rm = 1;
        for (size_t j = 0; j < a.cols(); j++) {
            if (!a(i, j).fits_slong_p()) {
                throw ValidationError("kernel_mod: entry too large");
            }
            rows[i][j] = a(i, j).get_si();
            if (rows[i][j] % moduli[j] != 0) {
                rm = lcm64(rm, moduli[j]);
            }
        }
        // Row i is read modulo the lcm of the moduli of the columns it touches.
        row_moduli[i] = rm;
    }
    return kernel_mod(rows, moduli, row_moduli);
}

}  // namespace stilde
