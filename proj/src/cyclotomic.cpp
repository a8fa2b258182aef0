#include "locind/cyclotomic.hpp"

#include <map>

namespace locind {
namespace poly {

namespace {
void build_cyclotomic(int M, std::map<int, Poly>& memo) {
  if (memo.count(M)) return;
  if (M == 1) {
    memo[1] = Poly{BigRat(-1), BigRat(1)};  // x - 1
    return;
  }
  Poly den{BigRat(1)};
  for (int d = 1; d < M; ++d) {
    if (M % d != 0) continue;
    build_cyclotomic(d, memo);
    den = mul(den, memo[d]);
  }
  Poly num(static_cast<size_t>(M) + 1, BigRat(0));
  num[0] = BigRat(-1);
  num[static_cast<size_t>(M)] = BigRat(1);  // x^M - 1
  auto [q, r] = divmod_monic(std::move(num), den);
  if (!r.empty())
    fail_internal("cyclotomic polynomial division left a remainder");
  memo[M] = std::move(q);
}
}  // namespace

Poly cyclotomic(int M) {
  std::map<int, Poly> memo;
  build_cyclotomic(M, memo);
  return memo[M];
}

}  // namespace poly

std::shared_ptr<const CycloContext> CycloContext::make(int M) {
  if (M < 1 || M % 4 != 0)
    fail_internal("cyclotomic context conductor must be a positive multiple of 4");
  auto ctx = std::make_shared<CycloContext>();
  ctx->conductor = M;
  ctx->phi = poly::cyclotomic(M);
  ctx->degree = static_cast<int>(ctx->phi.size()) - 1;
  ctx->zpow.resize(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    poly::Poly xj(static_cast<size_t>(j) + 1, BigRat(0));
    xj[static_cast<size_t>(j)] = BigRat(1);
    poly::Poly rem = poly::divmod_monic(std::move(xj), ctx->phi).second;
    rem.resize(static_cast<size_t>(ctx->degree), BigRat(0));
    ctx->zpow[static_cast<size_t>(j)] = std::move(rem);
  }
  return ctx;
}

}  // namespace locind
