#include "phaselab/poly.hpp"

namespace phaselab {

namespace {

struct F0Term {
    int e34;
    int e44;
    const char* coef;
};

// Eleven terms of the degree-10 elimination certificate for the six
// R^4 hyperplanes; coefficients kept as decimal strings.
constexpr F0Term kF0Terms[] = {
    {0, 10, "615836814694440125755941750205355957259806055430532973956877900"},
    {1, 9, "-884972594452387958848562473144241797030697764519228205098183524"},
    {2, 8, "37549510562762689603032479610577980614684970115180508761212602923"},
    {3, 7, "-261784289245252068342511157673868998003077035922935758454568869970"},
    {4, 6, "1318646361014374203805595493716801537462083922918839965435901151518"},
    {5, 5, "2323672503729013471271218611541822606087314313103855222266887257194"},
    {6, 4, "841099655929202539990506870648349938942927420225588274968467286492"},
    {7, 3, "2453118466138743624272476494499733256382267234695398509857315458204"},
    {8, 2, "2686702635361560203562012680667911834582476444588124478311966009776"},
    {9, 1, "59872475066978406270800582425071592403273130463063552339405262912"},
    {10, 0, "950484050032900617743793729374383632917614227356173754905368787200"},
};

}  // namespace

const BivariatePoly& f0_dataset() {
    static const BivariatePoly f0 = [] {
        std::vector<BiTerm> terms;
        for (const auto& t : kF0Terms) terms.push_back({t.e34, t.e44, BigInt(t.coef)});
        return BivariatePoly(std::move(terms));
    }();
    return f0;
}

}  // namespace phaselab
