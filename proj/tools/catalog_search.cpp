#include <fstream>
#include <iostream>
#include <random>

#include "tt/canonical.hpp"
#include "tt/catalog.hpp"
#include "tt/measures.hpp"
#include "tt/serialize.hpp"

using namespace tt;

static std::uint64_t name_seed(const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : name) h = (h ^ (unsigned char)ch) * 1099511628211ull;
    return h;
}

static void write_guide(const std::string& path, const std::string& name, const track& t) {
    std::mt19937_64 rng(name_seed(name));
    std::ofstream(path + ".gm") << print_weights(generic_guide(t, rng));
}

// searches random connector-based tracks until one passes every catalog check
int main(int argc, char** argv) {
    if (argc == 3 && std::string(argv[1]) == "guides") {
        // rewrite the guide of every track in a catalog directory
        for (auto& e : load_catalog()) {
            write_guide(std::string(argv[2]) + "/" + e.name, e.name, e.t);
            std::cout << e.name << "\n";
        }
        return 0;
    }
    if (argc < 5) {
        std::cerr << "usage: catalog_search <genus> <punctures> <seed> <out-stem> [count]\n"
                     "       catalog_search guides <catalog-dir>\n";
        return 2;
    }
    surface S{std::stoi(argv[1]), std::stoi(argv[2])};
    std::mt19937_64 rng(std::stoull(argv[3]));
    std::string stem = argv[4];
    int want = argc > 5 ? std::stoi(argv[5]) : 1;
    int found = 0;
    long trials = 0, census = 0;
    std::vector<std::string> seen;
    while (found < want) {
        ++trials;
        auto t = random_pants_track(S, rng);
        if (!t) continue;
        ++census;
        auto cs = find_twist_connectors(*t);
        if ((int)cs.size() < S.xi()) continue;
        if (!pants_check(*t, cs)) continue;
        bool twist = true;
        for (auto& c : cs) {
            auto d = connector_split_dir(*t, c);
            if (!d || canonical_code(split(*t, c.large, *d)) != canonical_code(*t)) twist = false;
        }
        if (!twist) continue;
        auto rep = completeness_surrogate(*t);
        if (!rep.all()) continue;
        auto cf = canonical(*t);
        if (std::find(seen.begin(), seen.end(), cf.code) != seen.end()) continue;
        seen.push_back(cf.code);
        std::string name = stem + (want > 1 ? std::string(1, char('a' + found)) : "");
        std::ofstream(name + ".trk") << print_track(cf.form);
        write_guide(name, name.substr(name.find_last_of('/') + 1), cf.form);
        std::cout << name << " trials=" << trials << " census=" << census << " connectors=" << cs.size() << "\n";
        ++found;
    }
}
