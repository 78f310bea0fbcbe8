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

#include "stilde/region.h"

#include <algorithm>

#include "stilde/errors.h"

namespace stilde {

Region::Region(size_t universe, std::vector<uint32_t> sites) : mask_(universe, false) {
    for (uint32_t s : sites) {
        if (s >= universe) {
            throw ValidationError("Region: site index out of range");
        }
        mask_[s] = true;
    }
    for (uint32_t s = 0; s < universe; s++) {
        if (mask_[s]) {
            sites_.push_back(s);
        }
    }
}

Region Region::all(size_t universe) {
    std::vector<uint32_t> s(universe);
    for (uint32_t k = 0; k < universe; k++) {
        s[k] = k;
    }
    return Region(universe, std::move(s));
}

Region Region::from_predicate(size_t universe, const std::function<bool(uint32_t)> &pred) {
    std::vector<uint32_t> s;
    for (uint32_t k = 0; k < universe; k++) {
        if (pred(k)) {
            s.push_back(k);
        }
    }
    return Region(universe, std::move(s));
}

Region Region::complement() const {
    return from_predicate(universe(), [&](uint32_t s) {
        return !mask_[s];
    });
}

static void require_same_universe(const Region &a, const Region &b) {
    if (a.universe() != b.universe()) {
        throw ValidationError("Region: mismatched universes");
    }
}

Region Region::operator|(const Region &o) const {
    require_same_universe(*this, o);
    return from_predicate(universe(), [&](uint32_t s) {
        return mask_[s] || o.mask_[s];
    });
}

Region Region::operator&(const Region &o) const {
    require_same_universe(*this, o);
    return from_predicate(universe(), [&](uint32_t s) {
        return mask_[s] && o.mask_[s];
    });
}

Region Region::operator-(const Region &o) const {
    require_same_universe(*this, o);
    return from_predicate(universe(), [&](uint32_t s) {
        return mask_[s] && !o.mask_[s];
    });
}

bool Region::is_subset_of(const Region &o) const {
    for (uint32_t s : sites_) {
        if (!o.contains(s)) {
            return false;
        }
    }
    return true;
}

bool Region::intersects(const Region &o) const {
    for (uint32_t s : sites_) {
        if (o.contains(s)) {
            return true;
        }
    }
    return false;
}

}  // namespace stilde
