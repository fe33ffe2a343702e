/* Copyright 2026 The burstkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

// Live UDP sender and receiver built on the fragment wire format.

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <map>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "burstkit/error.hpp"
#include "burstkit/reassembler.hpp"
#include "burstkit/wire.hpp"
#include "cli/commands.hpp"

namespace burstkit::cli {

namespace {

// Largest UDP payload that fits a 1500 B IPv4 path without IP fragmentation.
constexpr std::size_t kPathMtuPayload = 1472;
constexpr std::size_t kMaxDatagram = 65507;

std::string errno_text(int e) { return std::strerror(e); }

class Socket {
 public:
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  int fd() const { return fd_; }

 private:
  int fd_;
};

struct Endpoint {
  sockaddr_storage addr{};
  socklen_t len = 0;
  int family = AF_UNSPEC;
};

// "host:port" or "[v6addr]:port". An empty host means any address.
Endpoint resolve(const std::string& text, bool passive) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw ParameterError("endpoint '" + text + "' is not host:port");
  std::string host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  hints.ai_flags = AI_NUMERICSERV | (passive ? AI_PASSIVE : 0);
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) throw IoError("cannot resolve '" + text + "': " + ::gai_strerror(rc));
  Endpoint ep;
  std::memcpy(&ep.addr, res->ai_addr, res->ai_addrlen);
  ep.len = res->ai_addrlen;
  ep.family = res->ai_family;
  ::freeaddrinfo(res);
  return ep;
}

std::string peer_name(const sockaddr_storage& a) {
  char host[INET6_ADDRSTRLEN] = {};
  if (a.ss_family == AF_INET) {
    const auto* in = reinterpret_cast<const sockaddr_in*>(&a);
    ::inet_ntop(AF_INET, &in->sin_addr, host, sizeof host);
    return std::string(host) + ":" + std::to_string(ntohs(in->sin_port));
  }
  const auto* in6 = reinterpret_cast<const sockaddr_in6*>(&a);
  ::inet_ntop(AF_INET6, &in6->sin6_addr, host, sizeof host);
  return "[" + std::string(host) + "]:" + std::to_string(ntohs(in6->sin6_port));
}

// Sender and receiver share the wall clock; delays are only meaningful when
// both ends run on the same host or have synchronized clocks.
std::uint64_t wall_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<Nanos>(std::chrono::system_clock::now().time_since_epoch()).count());
}

}  // namespace

int cmd_send(const SendOptions& opt, std::ostream& out, std::ostream& err) {
  const auto src = resolve_source(opt.source, true);
  if (opt.pacing != "wall" && opt.pacing != "none") throw ParameterError("--pacing must be 'wall' or 'none'");
  if (!(opt.duration_s > 0.0) && opt.count == 0) throw ParameterError("need a positive --duration-s or --count");
  if (opt.fragment_size <= FragmentHeader::kEncodedSize) throw ConfigError("fragment size must exceed 24 B");
  if (opt.fragment_size > kMaxDatagram) throw ConfigError("fragment size exceeds the largest UDP datagram");
  if (opt.fragment_size > kPathMtuPayload) {
    err << "warning: fragment size " << opt.fragment_size << " B exceeds the " << kPathMtuPayload
        << " B UDP payload of a 1500 B path MTU; datagrams may be IP-fragmented\n";
  }
  const auto dest = resolve(opt.dest, false);
  Socket sock(::socket(dest.family, SOCK_DGRAM, 0));
  if (sock.fd() < 0) throw IoError("socket for " + opt.dest + ": " + errno_text(errno));

  auto gen = make_generator(src.spec, RngStream(opt.seed, StreamIds::generator(0)));
  std::vector<std::byte> buf(opt.fragment_size, std::byte{0});
  const bool paced = opt.pacing == "wall";
  const Nanos limit = opt.duration_s > 0.0 ? seconds_to_nanos(opt.duration_s) : Nanos::max();

  std::uint64_t bursts = 0, fragments = 0, bytes = 0, refused = 0;
  Nanos schedule{0};
  const auto t0 = std::chrono::steady_clock::now();
  while (gen->has_next_burst() && schedule < limit && (opt.count == 0 || bursts < opt.count)) {
    if (paced) std::this_thread::sleep_until(t0 + schedule);
    const auto b = gen->generate_burst();
    const auto frags = fragment_burst(static_cast<std::uint32_t>(bursts), b.burst_size, wall_ns(), opt.fragment_size);
    for (const auto& f : frags) {
      encode_header(f.header, buf);
      const auto len = FragmentHeader::kEncodedSize + f.payload_len;
      ssize_t n;
      do {
        n = ::sendto(sock.fd(), buf.data(), len, 0, reinterpret_cast<const sockaddr*>(&dest.addr), dest.len);
      } while (n < 0 && errno == EINTR);
      if (n < 0) {
        if (errno == ECONNREFUSED) {
          ++refused;
          continue;
        }
        throw IoError("send to " + opt.dest + ": " + errno_text(errno));
      }
      ++fragments;
      bytes += static_cast<std::uint64_t>(n);
    }
    ++bursts;
    schedule += b.next_period;
  }

  nlohmann::ordered_json doc;
  doc["meta"] = {{"generator", "burstkit send"},
                 {"command", "burstkit send " + src.flags + " --dest " + opt.dest + " --duration-s " +
                                 fmt(opt.duration_s) + " --count " + fmt(opt.count) + " --seed " + fmt(opt.seed) +
                                 " --fragment-size " + fmt(std::uint64_t{opt.fragment_size}) + " --pacing " +
                                 opt.pacing},
                 {"rng_algorithm", std::string(RngStream::kAlgorithmId)},
                 {"seed", fmt(opt.seed)},
                 {"dest", opt.dest},
                 {"timestamp_clock", "system_clock"}};
  for (const auto& [k, v] : src.meta) doc["meta"][k] = v;
  doc["bursts"] = bursts;
  doc["datagrams"] = fragments;
  doc["bytes"] = bytes;
  doc["refused"] = refused;
  Output o(opt.out, out);
  o.stream() << doc.dump(2) << '\n';
  o.finish();
  return 0;
}

int cmd_recv(const RecvOptions& opt, std::ostream& out, std::ostream& err) {
  if (!(opt.idle_timeout_s > 0.0)) throw ParameterError("idle timeout must be positive");
  if (opt.duration_s < 0.0) throw ParameterError("duration must be non-negative");
  const auto local = resolve(opt.listen, true);
  Socket sock(::socket(local.family, SOCK_DGRAM, 0));
  if (sock.fd() < 0) throw IoError("socket for " + opt.listen + ": " + errno_text(errno));
  const int one = 1;
  ::setsockopt(sock.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  const int rcvbuf = 8 << 20;  // best effort; the kernel may cap it
  ::setsockopt(sock.fd(), SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof rcvbuf);
  if (::bind(sock.fd(), reinterpret_cast<const sockaddr*>(&local.addr), local.len) != 0) {
    throw IoError("bind " + opt.listen + ": " + errno_text(errno));
  }

  Output o(opt.out, out);
  auto& os = o.stream();
  os << "# generator: burstkit recv\n"
     << "# command: burstkit recv --listen " << opt.listen << " --idle-timeout-s " << fmt(opt.idle_timeout_s)
     << " --duration-s " << fmt(opt.duration_s) << " --max-bursts " << opt.max_bursts << '\n'
     << "# listen: " << opt.listen << '\n'
     << "# delay_clock: sender system_clock; delays assume synchronized clocks\n"
     << "burst_seq,outcome,delay_ns,size,source\n";

  std::map<std::string, BurstReassembler> flows;
  std::uint64_t received = 0, discarded = 0, malformed = 0;
  const auto emit_discard = [&](const BurstDiscarded& d, const std::string& flow) {
    os << d.burst_seq << ",discarded,," << d.burst_size << ',' << flow << '\n';
    ++discarded;
  };

  std::vector<std::byte> buf(kMaxDatagram + 1);
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = opt.duration_s > 0.0 ? start + seconds_to_nanos(opt.duration_s)
                                             : std::chrono::steady_clock::time_point::max();
  const auto idle = seconds_to_nanos(opt.idle_timeout_s);
  auto last_activity = start;
  while (opt.max_bursts == 0 || received + discarded < opt.max_bursts) {
    const auto now = std::chrono::steady_clock::now();
    const auto wake = std::min(deadline, last_activity + idle);
    if (now >= wake) break;
    const auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>(wake - now).count() + 1;
    pollfd pfd{sock.fd(), POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(wait_ms, 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw IoError("poll on " + opt.listen + ": " + errno_text(errno));
    }
    if (rc == 0) continue;

    sockaddr_storage peer{};
    socklen_t peer_len = sizeof peer;
    const auto n = ::recvfrom(sock.fd(), buf.data(), buf.size(), 0, reinterpret_cast<sockaddr*>(&peer), &peer_len);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw IoError("receive on " + opt.listen + ": " + errno_text(errno));
    }
    const auto arrival = Nanos{static_cast<Nanos::rep>(wall_ns())};
    last_activity = std::chrono::steady_clock::now();
    FragmentHeader h;
    try {
      h = decode_header(std::span<const std::byte>(buf.data(), static_cast<std::size_t>(n)));
    } catch (const DecodeError&) {
      ++malformed;
      continue;
    }
    const auto flow = peer_name(peer);
    const auto payload = static_cast<std::uint32_t>(static_cast<std::size_t>(n) - FragmentHeader::kEncodedSize);
    const auto res = flows[flow].on_fragment(h, arrival, payload);
    if (res.discarded) emit_discard(*res.discarded, flow);
    if (res.received) {
      os << res.received->burst_seq << ",received," << res.received->delay.count() << ','
         << res.received->burst_size << ',' << flow << '\n';
      ++received;
    }
  }
  for (auto& [flow, r] : flows) {
    if (auto d = r.flush()) emit_discard(*d, flow);
  }
  o.finish();
  err << "recv: " << received << " received, " << discarded << " discarded, " << malformed << " malformed from "
      << flows.size() << " flow(s)\n";
  return 0;
}

}  // namespace burstkit::cli
