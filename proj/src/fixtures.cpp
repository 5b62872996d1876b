#include "natcoh/fixtures.hpp"

#include "natcoh/search.hpp"

namespace natcoh {

namespace {

// Columns of f (the displayed matrix is the transpose).
const char* const kF[2][8] = {
    {"z0", "2*z0 + 3*z1", "5*z0 + 7*z1", "8*z0 + 9*z1", "9*w0 + w1", "3*w0 + 8*w1", "2*w0 + 5*w1", "7*w0 + 6*w1"},
    {"z0 + 7*z1", "2*z0 + 9*z1", "8*z0 + 5*z1", "6*z0 + z1", "3*w0 + 5*w1", "7*w0 + 2*w1", "w0 + 11*w1", "w0"},
};

const char* const kG[4][8] = {
    {"-18860*w0 - 19145*w1", "26215/2*w0 + 34705/2*w1", "3120*w0 - 4385*w1", "-16725/2*w0 - 8455/2*w1",
     "1880*z0", "940*z0 + 705*z1", "3055*z0 + 235*z1", "2585*z0 + 1645*z1"},
    {"-4110*w0 + 10690*w1", "-1258*w0 - 12466*w1", "4758*w0 + 1916*w1", "-7433*w0 - 2296*w1",
     "2350*z0 + 940*z1", "470*z0 + 2350*z1", "1880*z1", "2820*z0 + 2585*z1"},
    {"-13845*w0 - 4450*w1", "8830*w0 + 1476*w1", "2015*w0 - 3506*w1", "-6025*w0 - 1029*w1",
     "2115*z0", "940*z0 + 1410*z1", "2115*z0 + 3055*z1", "1175*z0 + 470*z1"},
    {"-3035*w0 + 850*w1", "-711*w0 - 2793*w1", "1921*w0 - 302*w1", "-4756*w0 - 2803*w1",
     "1645*z0 + 1175*z1", "1410*z0 + 2350*z1", "1175*z0 + 1175*z1", "1645*z0 + 1645*z1"},
};

}  // namespace

std::vector<std::string> example_names()
{
    return {"paper-g2r2"};
}

MonadDocument example_document(const std::string& name)
{
    if (name == "paper-g2r2") return example_g2r2();
    throw InvalidParameters("unknown example '" + name + "'");
}

MonadDocument example_g2r2()
{
    MonadDocument doc;
    doc.params = {2, 2};
    const LineBundleSum a = monad_term_a(doc.params);
    const LineBundleSum b = monad_term_b(doc.params);
    const LineBundleSum c = monad_term_c(doc.params);

    std::vector<BiPoly> f;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) f.push_back(parse_bipoly(kF[j][i], b[i] - a[j]));
    std::vector<BiPoly> g;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) g.push_back(parse_bipoly(kG[i][j], c[i] - b[j]));

    SheafMap fm(a, b, std::move(f));
    SheafMap gm(b, c, std::move(g));
    doc.monad = Monad(a, b, c, std::move(fm), std::move(gm));
    return doc;
}

}  // namespace natcoh
