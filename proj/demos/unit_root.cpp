// Copyright 2026 The qdwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compares the two unit-root pipelines on a few ordinary Legendre curves.

#include <iostream>

#include <qdwork/qdwork.hpp>

int main() {
    using namespace qdwork;
    TruncationStore store;
    int rc = 0;
    for (auto [p, z0] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 3}, {5, 3}}) {
        const auto c = unit_root_compare(store, p, z0, 2);
        std::cout << "p=" << p << " z0=" << z0 << " a_p=" << c.curve.trace << " zeta " << c.zeta_root.residue()
                  << " dwork " << c.dwork_root.residue() << " agree " << c.agreement << "\n";
        if (c.agreement < 2) rc = 1;
    }
    // a_3 = 0 at z0 = 2, nothing to lift
    try {
        unit_root_compare(store, 3, 2, 2);
    } catch (const Error& e) {
        std::cout << "p=3 z0=2: " << e.what() << "\n";
    }
    return rc;
}
