#include "fibral/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "fibral/error.hpp"

namespace fibral {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
  unsigned int length = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), raw.data(), &length) != 1)
    throw Error(ErrorCode::InternalInconsistency, "digest computation failed");

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[raw[i] >> 4];
    out += hex[raw[i] & 0x0f];
  }
  return out;
}

}  // namespace fibral
