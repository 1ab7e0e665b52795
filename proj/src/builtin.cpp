#include "qscreen/builtin.hpp"

#include <stdexcept>

namespace qscreen {

namespace {

// Factors-as-rows, as the 18-run 4-factor arrays are usually printed.
constexpr int kD1[4][18] = {
    {2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1},
    {0, 1, 2, 0, 1, 2, 1, 2, 0, 2, 0, 1, 1, 2, 0, 2, 0, 1},
    {0, 1, 2, 1, 2, 0, 0, 1, 2, 2, 0, 1, 2, 0, 1, 1, 2, 0},
    {0, 1, 2, 1, 2, 0, 2, 0, 1, 1, 2, 0, 0, 1, 2, 2, 0, 1},
};

constexpr int kD2[4][18] = {
    {0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 0, 0, 1, 1, 1, 2, 2, 2},
    {2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1},
    {1, 2, 0, 1, 2, 0, 2, 0, 1, 0, 1, 2, 2, 0, 1, 0, 1, 2},
    {0, 1, 2, 2, 0, 1, 1, 2, 0, 1, 2, 0, 2, 0, 1, 0, 1, 2},
};

// Taguchi L18 (2^1 x 3^7), three-level columns 2..8 relabelled 1..7 with
// levels 1,2,3 -> 0,1,2. Runs-as-rows.
constexpr int kL18[18][7] = {
    {0, 0, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 1, 1, 1}, {0, 2, 2, 2, 2, 2, 2},
    {1, 0, 0, 1, 1, 2, 2}, {1, 1, 1, 2, 2, 0, 0}, {1, 2, 2, 0, 0, 1, 1},
    {2, 0, 1, 0, 2, 1, 2}, {2, 1, 2, 1, 0, 2, 0}, {2, 2, 0, 2, 1, 0, 1},
    {0, 0, 2, 2, 1, 1, 0}, {0, 1, 0, 0, 2, 2, 1}, {0, 2, 1, 1, 0, 0, 2},
    {1, 0, 1, 2, 0, 2, 1}, {1, 1, 2, 0, 1, 0, 2}, {1, 2, 0, 1, 2, 1, 0},
    {2, 0, 2, 1, 2, 0, 1}, {2, 1, 0, 2, 0, 1, 2}, {2, 2, 1, 0, 1, 2, 0},
};

template <std::size_t F, std::size_t N>
Design from_factor_rows(const int (&src)[F][N]) {
  std::vector<int> cells;
  cells.reserve(F * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < F; ++j) cells.push_back(src[j][i]);
  return validate(std::move(cells), N, std::vector<int>(F, 3));
}

template <std::size_t N, std::size_t F>
Design from_run_rows(const int (&src)[N][F]) {
  std::vector<int> cells;
  cells.reserve(F * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < F; ++j) cells.push_back(src[i][j]);
  return validate(std::move(cells), N, std::vector<int>(F, 3));
}

const std::vector<EmbeddedDesign>& registry() {
  static const std::vector<EmbeddedDesign> designs = {
      {"D1", from_factor_rows(kD1),
       "18-run 4-factor 3-level OA of strength 2 (minimum beta-aberration member of the D1/D2 pair), transposed "
       "from its factors-as-rows listing"},
      {"D2", from_factor_rows(kD2),
       "18-run 4-factor 3-level OA of strength 2 (minimum contamination member of the D1/D2 pair), transposed "
       "from its factors-as-rows listing"},
      {"L18", from_run_rows(kL18),
       "Taguchi L18 OA(18, 2^1 3^7, 2) with the 2-level column dropped; columns 1..7 here are the standard "
       "columns 2..8, levels 1,2,3 mapped to 0,1,2"},
  };
  return designs;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.push_back(d.name);
  return out;
}

const EmbeddedDesign& builtin_design(std::string_view name) {
  for (const auto& d : registry()) {
    if (d.name == name) return d;
  }
  throw std::invalid_argument("unknown builtin design '" + std::string(name) + "'");
}

}  // namespace qscreen
