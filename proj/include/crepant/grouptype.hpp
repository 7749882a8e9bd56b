#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "crepant/config.hpp"
#include "crepant/core.hpp"

namespace crepant {

struct CyclicFactor {
    std::int64_t order = 0;
    IntVec weights;
};

class QuotientType {
public:
    QuotientType(int r, std::vector<CyclicFactor> factors, std::int64_t element_budget = kDefaultElementBudget);

    // grammar: FACTOR ("x" FACTOR)*, FACTOR := "1/" INT "(" INT{,INT} ")"
    static QuotientType parse(const std::string& text, std::int64_t element_budget = kDefaultElementBudget);
    static QuotientType cyclic(std::int64_t l, IntVec weights, std::int64_t element_budget = kDefaultElementBudget);

    int dim() const { return r_; }
    const std::vector<CyclicFactor>& factors() const { return factors_; }
    bool is_cyclic() const { return factors_.size() == 1; }
    std::int64_t exponent() const { return exp_; }
    std::int64_t order() const { return order_; }
    std::int64_t element_budget() const { return budget_; }
    // xi_mu * alpha_mu, residues over exp_G
    IntVec generator(std::size_t mu) const;
    bool is_gorenstein() const;
    std::string str() const;

    // HNF data of the residue lattice exp_G*N_G, used for duplicate-free enumeration
    const std::vector<IntVec>& basis_columns() const { return hcols_; }
    const std::vector<IntVec>& basis_indices() const { return hidx_; }

    bool operator==(const QuotientType& o) const;

private:
    int r_;
    std::vector<CyclicFactor> factors_;
    std::int64_t exp_ = 1;
    std::int64_t order_ = 1;
    std::int64_t budget_;
    std::vector<IntVec> hcols_;
    std::vector<IntVec> hidx_;
};

struct GroupElement {
    IntVec index;  // one entry per cyclic factor
    IntVec delta;  // residues modulo exp_G
    std::int64_t exponent = 1;
    std::int64_t delta_sum = 0;
    int height = 0;

    bool has_integral_age() const { return delta_sum % exponent == 0; }
    std::int64_t age() const;  // throws unless the age is integral
    Rational rational_age() const { return frac(delta_sum, exponent); }
    std::vector<Rational> point() const;
    std::uint64_t support() const;  // bitmask of nonzero coordinates
    bool is_identity() const { return height == 0; }
};

// Visits every group element exactly once; throws BudgetError above the element budget.
void for_each_element(const QuotientType& t, const std::function<void(const GroupElement&)>& fn);
std::vector<GroupElement> enumerate_elements(const QuotientType& t);
GroupElement element_from_delta(const QuotientType& t, const IntVec& delta, const IntVec& index);
GroupElement inverse(const QuotientType& t, const GroupElement& g);

bool is_gorenstein(const QuotientType& t);

struct StructureReport {
    bool is_gorenstein = false;
    int splitting_codim = 0;
    bool is_msc = false;
    bool is_isolated = false;
    std::vector<std::int64_t> age_histogram;  // ages 1..r-1; empty if not Gorenstein
    std::uint64_t moving_coordinates = 0;      // coordinates not fixed by the whole group
};

StructureReport structure_report(const QuotientType& t);

// Junior configuration with standardized integer coordinates in Z^(r-1).
PointConfig junior_config(const QuotientType& t);

// Drops the coordinates fixed by every element. Returns t itself when it is msc.
QuotientType msc_core(const QuotientType& t);

}  // namespace crepant
