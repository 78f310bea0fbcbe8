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

#ifndef STILDE_REGION_H
#define STILDE_REGION_H

#include <cstdint>
#include <functional>
#include <vector>

namespace stilde {

/// A set of sites out of `universe` sites, kept as a sorted list plus a membership mask.
class Region {
   public:
    Region() = default;
    Region(size_t universe, std::vector<uint32_t> sites);
    static Region all(size_t universe);
    static Region from_predicate(size_t universe, const std::function<bool(uint32_t)> &pred);

    size_t universe() const {
        return mask_.size();
    }
    size_t size() const {
        return sites_.size();
    }
    bool empty() const {
        return sites_.empty();
    }
    bool contains(uint32_t site) const {
        return site < mask_.size() && mask_[site];
    }
    const std::vector<uint32_t> &sites() const {
        return sites_;
    }
    const std::vector<bool> &mask() const {
        return mask_;
    }

    Region complement() const;
    Region operator|(const Region &o) const;
    Region operator&(const Region &o) const;
    Region operator-(const Region &o) const;
    bool operator==(const Region &o) const {
        return sites_ == o.sites_ && mask_.size() == o.mask_.size();
    }
    bool operator!=(const Region &o) const {
        return !(*this == o);
    }
    bool is_subset_of(const Region &o) const;
    bool intersects(const Region &o) const;

   private:
    std::vector<uint32_t> sites_;
    std::vector<bool> mask_;
};

}  // namespace stilde

#endif
