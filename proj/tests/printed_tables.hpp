#pragma once

// The five basic coherent triangulations of 1/12(1,2,3,6) as printed, in the vertex names of the
// element table: e_i unit vectors, n_1 = (1,2,3,6)/12, n_2 = (2,4,6,0)/12, n_3 = (4,8,0,0)/12,
// n_6 = (6,0,6,0)/12, n_9 = (8,4,0,0)/12.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/triangulate.hpp"

namespace printed {

inline const std::vector<std::vector<std::string>>& basic_1_12() {
    static const std::vector<std::vector<std::string>> t = {
        {"e2 e4 n1 n3", "e3 n1 n2 n6", "e3 e4 n1 n6", "e2 e3 e4 n1", "e2 e3 n1 n2", "e2 n1 n2 n6", "e1 e4 n1 n9",
         "e4 n1 n3 n9", "e1 e4 n1 n6", "e2 n1 n3 n6", "n1 n3 n6 n9", "e1 n1 n6 n9"},
        {"e2 e4 n1 n3", "e3 n1 n2 n6", "e3 e4 n1 n6", "e2 e3 e4 n1", "e2 e3 n1 n2", "e2 n1 n2 n6", "e1 e4 n1 n9",
         "e4 n1 n3 n9", "e1 e4 n1 n6", "e2 n1 n2 n3", "n1 n2 n3 n9", "e1 n1 n2 n9"},
        {"e2 e4 n1 n3", "e3 n1 n2 n9", "e3 e4 n1 n6", "e2 e3 e4 n1", "e2 e3 n1 n2", "e3 n1 n6 n9", "e1 e4 n1 n9",
         "e4 n1 n3 n9", "e1 e4 n1 n6", "e2 n1 n2 n3", "n1 n2 n3 n9", "e1 n1 n6 n9"},
        {"e2 e4 n1 n3", "e3 n1 n2 n6", "e3 e4 n1 n6", "e2 e3 e4 n1", "e2 e3 n1 n2", "n1 n2 n6 n9", "e1 e4 n1 n9",
         "e4 n1 n3 n9", "e1 e4 n1 n6", "e2 n1 n2 n3", "n1 n2 n3 n9", "e1 n1 n6 n9"},
        {"e2 e4 n1 n3", "e3 n1 n2 n6", "e3 e4 n1 n6", "e2 e3 e4 n1", "e2 e3 n1 n2", "n1 n3 n6 n9", "e1 e4 n1 n9",
         "e4 n1 n3 n9", "e1 e4 n1 n6", "e2 n1 n2 n3", "n1 n2 n3 n6", "e1 n1 n6 n9"},
    };
    return t;
}

// Printed T_2 lists {e2 n1 n2 n6}, which leaves a free interior ridge; {e1 n1 n2 n6} completes it to a
// valid triangulation.
inline std::vector<std::vector<std::string>> basic_1_12_repaired() {
    auto t = basic_1_12();
    t[1][5] = "e1 n1 n2 n6";
    return t;
}

inline crepant::IntVec residue_of(const std::string& name) {
    static const std::map<std::string, crepant::IntVec> m = {
        {"e1", {12, 0, 0, 0}}, {"e2", {0, 12, 0, 0}}, {"e3", {0, 0, 12, 0}}, {"e4", {0, 0, 0, 12}},
        {"n1", {1, 2, 3, 6}},  {"n2", {2, 4, 6, 0}},  {"n3", {4, 8, 0, 0}},  {"n6", {6, 0, 6, 0}},
        {"n9", {8, 4, 0, 0}},
    };
    return m.at(name);
}

// Translates a printed triangulation into point indices of the configuration (matched by residues).
inline crepant::Triangulation to_indices(const crepant::PointConfig& cfg, const std::vector<std::string>& simplices) {
    std::map<crepant::IntVec, int> index;
    for (std::size_t i = 0; i < cfg.size(); ++i) index[cfg.labels[i].residue] = int(i);
    std::vector<crepant::Simplex> out;
    for (const auto& s : simplices) {
        std::istringstream is(s);
        std::string name;
        crepant::Simplex simp;
        while (is >> name) simp.push_back(index.at(residue_of(name)));
        out.push_back(simp);
    }
    return crepant::make_triangulation(cfg, out);
}

}  // namespace printed
