#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdm {

// The tuple (l1, M1, l2, M2): counts factorizations n = n1*n2 with
// n1 = l1 (mod M1), n2 = l2 (mod M2).  Standing assumption 1 <= li <= Mi,
// so lambda_i = li/Mi lies in (0, 1].
struct CongruenceSpec {
    std::int64_t l1 = 1, m1 = 1, l2 = 1, m2 = 1;

    double lambda1() const { return double(l1) / double(m1); }
    double lambda2() const { return double(l2) / double(m2); }
    std::int64_t modulus_product() const { return m1 * m2; }

    void validate() const {
        if (m1 < 1 || m2 < 1 || l1 < 1 || l2 < 1 || l1 > m1 || l2 > m2)
            throw std::invalid_argument(
                "congruence spec requires 1 <= l1 <= M1 and 1 <= l2 <= M2, got " + to_string());
    }

    std::string to_string() const {
        return std::to_string(l1) + "," + std::to_string(m1) + "," +
               std::to_string(l2) + "," + std::to_string(m2);
    }

    // Parses "l1,m1,l2,m2".  Throws std::invalid_argument naming the bad field.
    static CongruenceSpec parse(const std::string& text);

    bool operator==(const CongruenceSpec&) const = default;
};

}  // namespace cdm
