#include "tubecalc/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace tubecalc {

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

const char* mode_name(annular::Mode m) { return m == annular::Mode::shaded ? "shaded" : "unshaded"; }

Json certificate_json(const annular::Certificate& c) {
    Json j;
    j["target"] = c.target.encode();
    j["contained"] = c.contained;
    j["verified"] = c.verified;
    Json terms = Json::array();
    for (const auto& [d, coeff] : c.preimage.terms()) terms.push_back({{"diagram", d.encode()}, {"coeff", coeff.to_string()}});
    j["preimage"] = terms;
    return j;
}

}  // namespace

Json to_json(const FusionRing& ring, const std::vector<AxiomFailure>& failures) {
    Json j;
    j["name"] = ring.name();
    j["rank"] = ring.size();
    j["truncated"] = ring.truncated();
    j["labels"] = ring.labels();
    Json dims = Json::array();
    for (std::size_t i = 0; i < ring.size(); ++i) {
        Json d{{"label", ring.label(i)}, {"float", ring.dims()[i]}};
        if (ring.exact_dims()) d["exact"] = (*ring.exact_dims())[i].to_string();
        dims.push_back(d);
    }
    j["dims"] = dims;
    Json fails = Json::array();
    for (const auto& f : failures) fails.push_back({{"axiom", f.axiom}, {"witness", f.witness}, {"detail", f.detail}});
    j["axiom_failures"] = fails;
    return j;
}

Json to_json(const BettiZeroReport& r) {
    Json j;
    j["global_index"] = r.global_index;
    j["beta0"] = r.beta0;
    j["exact_global_index"] = r.exact_global_index ? Json(r.exact_global_index->to_string()) : Json(nullptr);
    j["exact_beta0"] = r.exact_beta0 ? Json(r.exact_beta0->to_string()) : Json(nullptr);
    return j;
}

Json to_json(const HochschildWitness& w) {
    Json j;
    j["max_degree"] = w.max_degree;
    j["boundaries_checked"] = w.boundaries_checked;
    j["functional_vanishes_on_boundaries"] = w.functional_vanishes_on_boundaries;
    j["witness_cycle_value"] = w.witness_cycle_value.to_string();
    Json nv = Json::array();
    for (const auto& [a, b] : w.nonvanishing) nv.push_back({a, b});
    j["nonvanishing"] = nv;
    return j;
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["all_passed"] = r.all_passed();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json x{{"name", c.name}, {"applicable", c.applicable}, {"checked", c.checked}, {"failures", c.failures}};
        if (!c.witness.empty()) x["witness"] = c.witness;
        if (!c.detail.empty()) x["detail"] = c.detail;
        checks.push_back(x);
    }
    j["checks"] = checks;
    return j;
}

Json to_json(const CornerMatch& c) {
    Json j;
    j["matched"] = c.matched;
    j["corner_dim"] = c.corner_dim;
    if (!c.mismatch.empty()) j["mismatch"] = c.mismatch;
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

Json to_json(const HomologyReport& h) {
    Json j;
    j["degrees_computed"] = h.degrees_computed;
    j["chain_dims"] = h.chain_dims;
    j["ranks"] = h.ranks;
    j["homology_dims"] = h.dims;
    j["boundary_squares_zero"] = h.boundary_squares_zero;
    return j;
}

Json to_json(const annular::H0Report& r) {
    return Json{{"window", r.window}, {"chain_dim", r.chain_dim}, {"boundary_rank", r.boundary_rank}, {"homology_dim", r.homology_dim}};
}

Json to_json(const annular::H1Report& r) {
    Json j;
    j["K"] = r.K;
    j["mode"] = mode_name(r.mode);
    j["domain_dim"] = r.domain_dim;
    j["boundary_rank"] = r.boundary_rank;
    j["contained"] = r.contained;
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
    j["certificates"] = certs;
    return j;
}

Json to_json(const annular::H2Report& r) {
    Json j;
    j["N"] = r.N;
    j["margin"] = r.margin;
    j["mode"] = mode_name(r.mode);
    j["chain_dims"] = {{"degree2", r.degree2_dim}, {"degree3", r.degree3_dim}};
    j["kernel_dim"] = r.kernel_dim;
    j["image_rank"] = r.image_rank;
    j["contained"] = r.contained;
    Json failing = Json::array();
    for (const auto& v : r.failing_vectors()) failing.push_back(v.to_string());
    j["failing_vectors"] = failing;
    return j;
}

Json to_json(const annular::TruncatedHomology& r) {
    Json j;
    j["mode"] = mode_name(r.mode);
    j["truncation"] = r.window;
    j["chain_dims"] = r.chain_dims;
    j["ranks"] = r.ranks;
    j["homology_dims"] = r.homology_dims;
    return j;
}

Json to_json(const BettiProfile& p) {
    Json j;
    Json prof = Json::array();
    for (std::size_t k = 0; k < p.values.size(); ++k)
        prof.push_back({{"degree", k}, {"exact", p.values[k].to_string()}, {"float", p.values[k].evaluate()}});
    j["profile"] = prof;
    j["declared_zero_above"] = p.declared_zero_above;
    j["provenance"] = p.provenance;
    j["warnings"] = p.warnings;
    return j;
}

Json to_json(const FolnerReport& r, const WeightedGraph& g) {
    Json j;
    j["strategy"] = r.strategy == FolnerStrategy::balls ? "balls" : "greedy";
    j["epsilon"] = r.epsilon;
    j["found"] = r.found;
    j["ratio"] = r.ratio;
    j["set_size"] = r.set.size();
    Json names = Json::array();
    for (std::size_t v : r.set) names.push_back(g.vertices[v]);
    j["set"] = names;
    j["candidates"] = r.candidates;
    j["radius"] = r.radius ? Json(*r.radius) : Json(nullptr);
    return j;
}

Json to_json(const KestenReport& r) {
    Json j;
    j["graph_norm"] = r.graph_norm;
    j["dimension"] = r.dimension;
    j["amenable"] = r.amenable;
    j["stable"] = r.stable;
    j["window"] = r.window;
    Json hist = Json::array();
    for (const auto& [w, n] : r.history) hist.push_back({{"window", w}, {"norm", n}});
    j["history"] = hist;
    return j;
}

namespace {

void render(std::ostringstream& out, const Json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render(out, v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) render(out, j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    if (report.contains("summary")) {
        for (const auto& line : report["summary"]) out << line.get<std::string>() << "\n";
        return out.str();
    }
    render(out, report, "");
    return out.str();
}

}  // namespace tubecalc
