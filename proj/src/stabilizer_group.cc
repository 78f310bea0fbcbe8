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

#include "stilde/stabilizer_group.h"

#include <numeric>

#include "stilde/errors.h"

namespace stilde {

namespace {

/// A unit modulo `big` congruent to u modulo m (m | big, gcd(u, m) = 1).
int64_t lift_unit(int64_t u, int64_t m, int64_t big) {
    for (int64_t k = 0;; k++) {
        int64_t c = u + k * m;
        if (gcd64(c, big) == 1) {
            return c;
        }
    }
}

}  // namespace

void StabilizerGroup::note_scalar(const WeylOp &s) {
    if (!s.phase().is_zero()) {
        scalar_order_ = lcm64(scalar_order_, s.phase().den);
    }
}

StabilizerGroup::StabilizerGroup(SiteSystemPtr sys, const std::vector<WeylOp> &generators, std::vector<uint32_t> site_order)
    : sys_(std::move(sys)), order_(std::move(site_order)) {
    size_t n = sys_->size();
    if (order_.empty()) {
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), 0);
    }
    if (order_.size() != n) {
        throw ValidationError("StabilizerGroup: site order must list every site once");
    }
    {
        std::vector<bool> seen(n, false);
        for (uint32_t s : order_) {
            if (s >= n || seen[s]) {
                throw ValidationError("StabilizerGroup: site order must list every site once");
            }
            seen[s] = true;
        }
    }
    int64_t D = sys_->lcm();

    std::vector<WeylOp> pool;
    for (const auto &g : generators) {
        if (g.num_sites() != n) {
            throw ValidationError("StabilizerGroup: generator on the wrong site system");
        }
        if (g.is_scalar()) {
            note_scalar(g);
        } else {
            pool.push_back(g);
        }
    }

    std::vector<size_t> hits;
    for (size_t c = 0; c < 2 * n && !pool.empty(); c++) {
        int64_t m = column_modulus(c);
        hits.clear();
        for (size_t k = 0; k < pool.size(); k++) {
            if (entry(pool[k], c) != 0) {
                hits.push_back(k);
            }
        }
        if (hits.empty()) {
            continue;
        }
        WeylOp a = pool[hits[0]];
        for (size_t h = 1; h < hits.size(); h++) {
            WeylOp &b = pool[hits[h]];
            int64_t alpha = entry(a, c);
            int64_t beta = entry(b, c);
            int64_t s, t;
            int64_t g = xgcd64(alpha, beta, s, t);
            // [[s, t], [beta/g, -alpha/g]] has determinant -1, so the span is unchanged.
            WeylOp na = power(a, s) * power(b, t);
            WeylOp nb = power(a, beta / g) * power(b, -alpha / g);
            a = std::move(na);
            b = std::move(nb);
        }
        int64_t alpha = entry(a, c);
        int64_t g = gcd64(alpha, m);
        if (alpha != g) {
            int64_t u = lift_unit(normalizing_unit(alpha, m), m, D);
            int64_t v = inverse_mod(u, D);
            WeylOp au = power(a, u);
            // a = au^v up to the scalar a^{1 - u v}; keep it so no phase is lost.
            WeylOp back = power(au, v) * inverse(a);
            if (!back.is_scalar()) {
                throw PropertyViolation("StabilizerGroup: unit renormalization left a non-scalar");
            }
            note_scalar(back);
            a = std::move(au);
        }

        // Remove consumed rows from the pool (hits[0] becomes the pivot row; the others now
        // vanish on this column and stay).
        pool.erase(pool.begin() + (ptrdiff_t)hits[0]);
        WeylOp ann = power(a, m / g);
        if (ann.is_scalar()) {
            note_scalar(ann);
        } else {
            pool.push_back(ann);
        }
        pivots_.push_back(Pivot{c, g, rows_.size()});
        rows_.push_back(std::move(a));

        // Drop rows that became scalars.
        size_t w = 0;
        for (size_t k = 0; k < pool.size(); k++) {
            if (pool[k].is_scalar()) {
                note_scalar(pool[k]);
            } else {
                if (w != k) {
                    pool[w] = std::move(pool[k]);
                }
                w++;
            }
        }
        pool.resize(w);
    }
    for (const auto &p : pool) {
        if (!p.is_scalar()) {
            throw PropertyViolation("StabilizerGroup: elimination left a non-scalar row");
        }
        note_scalar(p);
    }

    // Reduce entries above each pivot to canonical residues.
    for (size_t k = 0; k < pivots_.size(); k++) {
        const Pivot &pk = pivots_[k];
        for (size_t i = 0; i < k; i++) {
            WeylOp &r = rows_[pivots_[i].row];
            int64_t e = entry(r, pk.column);
            int64_t q = e / pk.value;
            if (q != 0) {
                r = r * power(rows_[pk.row], -q);
            }
        }
    }
}

BigInt StabilizerGroup::order() const {
    BigInt r = 1;
    for (const auto &p : pivots_) {
        r *= BigInt((long)(column_modulus(p.column) / p.value));
    }
    return r;
}

std::optional<Phase> StabilizerGroup::phase_of(const WeylOp &v) const {
    require_same_system(v, rows_.empty() ? v : rows_[0]);
    WeylOp cur = v;
    size_t next = 0;
    for (size_t c = 0; c < 2 * sys_->size(); c++) {
        uint32_t e = entry(cur, c);
        bool has_pivot = next < pivots_.size() && pivots_[next].column == c;
        if (e != 0) {
            if (!has_pivot || e % pivots_[next].value != 0) {
                return std::nullopt;
            }
            cur = cur * power(rows_[pivots_[next].row], -(int64_t)(e / pivots_[next].value));
        }
        if (has_pivot) {
            next++;
        }
    }
    return cur.phase();
}

WeylOp StabilizerGroup::reduce(const WeylOp &v) const {
    WeylOp cur = v;
    for (const auto &p : pivots_) {
        int64_t e = entry(cur, p.column);
        int64_t q = e / p.value;
        if (q != 0) {
            cur = cur * power(rows_[p.row], -q);
        }
    }
    return cur;
}

std::vector<WeylOp> StabilizerGroup::rows_from_column(size_t first_column) const {
    std::vector<WeylOp> out;
    for (const auto &p : pivots_) {
        if (p.column >= first_column) {
            out.push_back(rows_[p.row]);
        }
    }
    return out;
}

}  // namespace stilde
