#ifndef QMC_TEST_SUPPORT_HPP
#define QMC_TEST_SUPPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "qmc/certifier.hpp"

namespace testing {

inline std::filesystem::path corpus() { return QMC_CORPUS_DIR; }

inline qmc::NumberField field(std::string const& name)
{
    auto src = qmc::load_field(corpus() / "fields" / (name + ".json"));
    return qmc::NumberField::construct(src.poly, src.basis);
}

inline qmc::InstanceSource instance(std::string const& name)
{
    return qmc::load_instance(corpus() / "instances" / (name + ".json"));
}

inline std::vector<std::string> instance_names()
{
    std::vector<std::string> out;
    for (auto const& e : std::filesystem::directory_iterator(corpus() / "instances"))
        if (e.path().extension() == ".json")
            out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

inline qmc::IntPoly ipoly(std::initializer_list<long> cs)
{
    qmc::IntPoly p;
    for (long c : cs)
        p.push_back(qmc::Integer(c));
    return p;
}

inline qmc::Element elem(std::initializer_list<long> cs)
{
    qmc::Element x(static_cast<Eigen::Index>(cs.size()));
    Eigen::Index i = 0;
    for (long c : cs)
        x(i++) = qmc::Integer(c);
    return x;
}

} // namespace testing

#endif
