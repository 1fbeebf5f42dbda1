#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swarmlaunch::detail {

/// Incremental SHA-256 over libcrypto's EVP interface, hex-encoded output.
class sha256 {
public:
    sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256: init failed");
    }

    void update(const void* data, std::size_t len) {
        if (EVP_DigestUpdate(ctx_.get(), data, len) != 1)
            throw std::runtime_error("sha256: update failed");
    }

    void update(std::string_view s) { update(s.data(), s.size()); }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), raw.data(), &len) != 1)
            throw std::runtime_error("sha256: final failed");
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i) {
            out.push_back(digits[raw[i] >> 4]);
            out.push_back(digits[raw[i] & 0xf]);
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

inline std::string sha256_hex(std::string_view s) {
    sha256 h;
    h.update(s);
    return h.hex();
}

/// Hash of a file's contents. Throws on unreadable paths.
inline std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256: cannot open " + path);
    sha256 h;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h.update(buf, static_cast<std::size_t>(in.gcount()));
    return h.hex();
}

}  // namespace swarmlaunch::detail
