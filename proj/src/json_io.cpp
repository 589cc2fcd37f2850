#include "k3gw/json_io.hpp"

#include <stdexcept>

namespace k3gw {

namespace {
const char* kDenNames[4] = {"s-1", "s-i", "s+1", "s+i"};

Json terms_json(const SLaurent& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"s", e}, {"re", rational_str(c.re())}, {"im", rational_str(c.im())}});
    return terms;
}
}  // namespace

Json to_json(const GQ& g) { return {{"re", rational_str(g.re())}, {"im", rational_str(g.im())}}; }

GQ gq_from_json(const Json& j) {
    return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
}

Json to_json(const QSeries& a) {
    Json rows = Json::array();
    for (int n = a.q_min(); n <= a.q_max(); ++n) {
        const SRat& x = a[n];
        if (x.is_zero()) continue;
        Json row = {{"q", n}};
        if (x.is_laurent()) {
            row["terms"] = terms_json(x.to_laurent());
        } else {
            row["terms"] = terms_json(x.num());
            Json den = Json::object();
            for (int r = 0; r < 4; ++r)
                if (x.ex()[r] != 0) den[kDenNames[r]] = x.ex()[r];
            row["den"] = den;
        }
        rows.push_back(row);
    }
    return {{"q_min", a.q_min()}, {"q_max", a.q_max()}, {"rows", rows}};
}

QSeries qseries_from_json(const Json& j) {
    QSeries a(j.at("q_min").get<int>(), j.at("q_max").get<int>());
    for (const auto& row : j.at("rows")) {
        std::vector<SLaurent::Term> terms;
        for (const auto& t : row.at("terms")) terms.emplace_back(t.at("s").get<int>(), gq_from_json(t));
        SRat::Exps ex{0, 0, 0, 0};
        if (row.contains("den"))
            for (int r = 0; r < 4; ++r)
                if (row["den"].contains(kDenNames[r])) ex[r] = row["den"][kDenNames[r]].get<int>();
        a.at(row.at("q").get<int>()) = SRat(SLaurent::from_terms(std::move(terms)), ex);
    }
    return a;
}

Json to_json(const WSeries& a) {
    Json rows = Json::array();
    for (int w = a.w_min(); w <= a.w_max(); ++w)
        for (int n = a.q_min(); n <= a.q_max(); ++n) {
            GQ c = a.coeff(w, n);
            if (c.is_zero()) continue;
            Json t = to_json(c);
            t["w"] = w;
            t["q"] = n;
            rows.push_back(t);
        }
    return {{"w_min", a.w_min()}, {"w_max", a.w_max()}, {"q_min", a.q_min()}, {"q_max", a.q_max()}, {"terms", rows}};
}

}  // namespace k3gw
