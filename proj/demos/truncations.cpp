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

// Prints the first few normalized truncations for the rank-one quiver.

#include <iostream>

#include <qdwork/qdwork.hpp>

int main() {
    using namespace qdwork;
    const auto qp = validate(5, 2, 1, 1, 2, 2);
    for (unsigned s = 1; s <= 2; ++s) {
        const auto rec = truncation_q(qp, s);
        std::cout << "T_" << s << ": " << rec.poly.term_count() << " terms, theta " << rec.theta << "\n";
        std::cout << "  q=1 " << truncation_classical(rec) << "\n";
    }
    // s=1 is small enough to show whole
    std::cout << truncation_q(qp, 1).poly << "\n";
}
