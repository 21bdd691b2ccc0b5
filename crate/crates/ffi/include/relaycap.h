/* C interface of the relaycap library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code of every fallible call.
 */
typedef enum RcapStatus {
  RCAP_STATUS_OK = 0,
  RCAP_STATUS_NULL_POINTER = 1,
  RCAP_STATUS_INVALID_ARGUMENT = 2,
  RCAP_STATUS_PARSE_ERROR = 3,
  RCAP_STATUS_TOO_LARGE = 4,
  RCAP_STATUS_DISCONNECTED = 5,
  RCAP_STATUS_BUFFER_TOO_SMALL = 6,
  RCAP_STATUS_INTERNAL_ERROR = 7,
} RcapStatus;

/*
 Opaque MIMO channel handle.
 */
typedef struct RcapChannel RcapChannel;

/*
 Opaque relay network handle.
 */
typedef struct RcapNetwork RcapNetwork;

/*
 Route-guarantee outcome; mirrors the library's report.
 */
typedef struct RcapGuaranteeReport {
  double best_route_bits;
  double approx_capacity_bits;
  double fraction;
  double additive_gap_bits;
  bool satisfied;
} RcapGuaranteeReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Last error message of this thread; valid until the next failing call.
 Never null.
 */
const char *rcap_last_error_message(void);

/*
 Frees a string returned by one of the `*_json` functions.

 # Safety
 `s` must be a pointer previously returned by this library and not yet
 freed, or null.
 */
void rcap_string_free(char *s);

/*
 Parses a network document (UTF-8 JSON) into a new handle.

 # Safety
 `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum RcapStatus rcap_network_from_json(const char *json, struct RcapNetwork **out);

/*
 Serializes a network handle back to its JSON document.

 # Safety
 `net` must be a live handle from this library; `out` must be valid.
 */
enum RcapStatus rcap_network_to_json(const struct RcapNetwork *net, char **out);

/*
 Releases a network handle.

 # Safety
 `net` must be a handle from this library, not yet freed, or null.
 */
void rcap_network_free(struct RcapNetwork *net);

/*
 Number of relays of a network.

 # Safety
 `net` must be a live handle; `out` must be valid.
 */
enum RcapStatus rcap_network_num_relays(const struct RcapNetwork *net, uint32_t *out);

/*
 Point-to-point capacity of one link, in bits.

 # Safety
 `net` must be a live handle; `out_bits` must be valid.
 */
enum RcapStatus rcap_network_link_capacity(const struct RcapNetwork *net,
                                           uint32_t from,
                                           uint32_t to,
                                           double *out_bits);

/*
 Approximate capacity and one minimum cut. `max_relays` of zero uses the
 default exhaustive cap. `out_cut` may be null to query only the
 capacity; otherwise `out_cut_len` receives the member count and the
 buffer must hold at least that many entries.

 # Safety
 `net` must be a live handle; non-null out-pointers must be valid, and
 `out_cut` (when non-null) must point to `cut_buffer_len` writable
 entries.
 */
enum RcapStatus rcap_network_capacity(const struct RcapNetwork *net,
                                      uint32_t max_relays,
                                      double *out_bits,
                                      uint32_t *out_cut,
                                      uint32_t cut_buffer_len,
                                      uint32_t *out_cut_len);

/*
 Best route and its bottleneck capacity. `out_nodes` may be null to
 query only the capacity.

 # Safety
 Same contract as [`rcap_network_capacity`].
 */
enum RcapStatus rcap_network_best_route(const struct RcapNetwork *net,
                                        double *out_bits,
                                        uint32_t *out_nodes,
                                        uint32_t node_buffer_len,
                                        uint32_t *out_node_len);

/*
 Best-route guarantee report for a network. `max_relays` of zero uses
 the default exhaustive cap.

 # Safety
 `net` must be a live handle; `out` must be valid.
 */
enum RcapStatus rcap_network_route_guarantee(const struct RcapNetwork *net,
                                             uint32_t max_relays,
                                             struct RcapGuaranteeReport *out);

/*
 Generates the arbitrary-topology worst-case network as a JSON document
 with its designed sidecar block.

 # Safety
 `out` must be a valid pointer.
 */
enum RcapStatus rcap_construct_general_json(uint32_t num_relays, double weak_bits, char **out);

/*
 Generates the layered worst-case network as a JSON document with its
 designed sidecar block.

 # Safety
 `out` must be a valid pointer.
 */
enum RcapStatus rcap_construct_layered_json(uint32_t layers,
                                            uint32_t per_layer,
                                            double capacity_bits,
                                            char **out);

/*
 Builds a channel handle from `rows * cols` interleaved (re, im) pairs
 in row-major order; rows are receive antennas.

 # Safety
 `entries` must point to `2 * rows * cols` readable doubles; `out` must
 be valid.
 */
enum RcapStatus rcap_channel_create(uint32_t rows,
                                    uint32_t cols,
                                    const double *entries,
                                    struct RcapChannel **out);

/*
 Releases a channel handle.

 # Safety
 `ch` must be a handle from this library, not yet freed, or null.
 */
void rcap_channel_free(struct RcapChannel *ch);

/*
 MIMO capacity of a channel with i.i.d. unit-power inputs, in bits.

 # Safety
 `ch` must be a live handle; `out_bits` must be valid.
 */
enum RcapStatus rcap_channel_capacity(const struct RcapChannel *ch, double *out_bits);

/*
 Exact best k_t x k_r subchannel by exhaustive search. `out_tx` and
 `out_rx` receive the kept antenna indices and must hold k_t and k_r
 entries.

 # Safety
 `ch` must be a live handle; out-pointers must be valid with the stated
 capacities.
 */
enum RcapStatus rcap_subchannel_bruteforce(const struct RcapChannel *ch,
                                           uint32_t k_t,
                                           uint32_t k_r,
                                           double *out_bits,
                                           uint32_t *out_tx,
                                           uint32_t *out_rx);

/*
 Greedy k_t x k_r subchannel by one-antenna-at-a-time pruning; keeps at
 least k_t k_r / (n_t n_r) of the capacity. Buffer contract as in
 [`rcap_subchannel_bruteforce`].

 # Safety
 Same contract as [`rcap_subchannel_bruteforce`].
 */
enum RcapStatus rcap_subchannel_greedy(const struct RcapChannel *ch,
                                       uint32_t k_t,
                                       uint32_t k_r,
                                       double *out_bits,
                                       uint32_t *out_tx,
                                       uint32_t *out_rx);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
