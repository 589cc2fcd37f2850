#pragma once

#include "k3gw/jacobi.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k3gw {

struct MissingPhi : std::out_of_range {
    int m, l;
    MissingPhi(int m_, int l_);
};

// The structure series phi_{m,l} built from the closed forms in K = iF, J1,
// wp, wp', E2, E4, closed under phi_{-m,-l} = -phi_{m,l} and l phi_{m,l} = m phi_{l,m}.
class PhiTable {
public:
    explicit PhiTable(int q_max);

    int q_max() const { return q_max_; }
    // m > 0 entries with a closed form: (1,-1..1), (2,-2..2), (3,-2..3), (4,0)
    static const std::vector<std::pair<int, int>>& closed_form_entries();
    static bool derivable(int m, int l);
    // throws MissingPhi outside the closure
    const QSeries& get(int m, int l) const;
    // phi_{m,l} + sgn(m) delta_{ml}, with its weight and index bookkeeping
    const QuasiJacobiForm& shifted_form(int m, int l) const;

private:
    int q_max_;
    std::map<std::pair<int, int>, QuasiJacobiForm> forms_;
    std::map<std::pair<int, int>, QSeries> series_;
};

}  // namespace k3gw
