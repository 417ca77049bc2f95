#pragma once

#include <json.hpp>

#include "cech.hpp"
#include "decomp.hpp"

// JSON rendering of the report types.  ordered_json keeps insertion order,
// which is what makes the CLI output byte-stable across runs.

namespace hhlab {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const FieldSpec& fs)
{
    ojson j;
    j["characteristic"] = fs.characteristic();
    j["name"] = fs.to_string();
    return j;
}

inline ojson to_json(const SheafSpec& spec)
{
    ojson j;
    j["sheaf"] = spec.to_string();
    j["n"] = spec.n;
    auto w = spec.normalized();
    j["normalized"] = w.to_string();
    return j;
}

inline ojson to_json(const CechDetails& det)
{
    ojson j;
    j["multidegrees"] = det.multidegrees;
    j["shell_checked"] = det.shell_checked;
    j["min_component_bound"] = det.min_component_bound;
    return j;
}

inline ojson to_json(const DecompositionReport& rep)
{
    ojson j;
    j["space"] = rep.space == Space::Affine ? "affine" : "pn";
    j["n"] = rep.n;
    j["field"] = to_json(rep.field);
    j["validity"] = rep.validity;
    if (rep.validity)
        j["hh"] = rep.hh;
    else
        j["hh"] = nullptr; // no formula applies; nothing is fabricated
    j["summands"] = rep.summands;
    return j;
}

inline ojson to_json(const CharacteristicWitness& w)
{
    ojson j;
    j["n"] = w.n;
    j["p"] = w.p;
    j["q_max"] = w.q_max;
    j["d_max"] = w.d_max;
    j["verdict"] = w.holds ? "holds" : "fails";
    if (w.witness) {
        ojson d;
        d["q"] = w.witness->q;
        d["d"] = w.witness->d;
        d["homology_rank"] = w.witness->homology_rank;
        d["induced_rank"] = w.witness->induced_rank;
        j["witness"] = d;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

} // namespace hhlab
