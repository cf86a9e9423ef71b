import { describe, expect, it } from "vitest";

import { escapeHtml, formatDate, formatFluence, localName, toUtcInstant } from "../src/format.js";

describe("formatDate", () => {
  it("renders day/month/year", () => {
    expect(formatDate("2018-09-07T00:00:00Z")).toBe("07/09/2018");
    expect(formatDate("2018-11-26T13:45:00Z")).toBe("26/11/2018");
  });

  it("passes through values it cannot read", () => {
    expect(formatDate("soon")).toBe("soon");
  });
});

describe("formatFluence", () => {
  it("uses compact scientific notation", () => {
    expect(formatFluence(3e17)).toBe("3e17");
    expect(formatFluence(1.5e16)).toBe("1.5e16");
    expect(formatFluence(2e-3)).toBe("2e-3");
  });
});

describe("localName", () => {
  it("prettifies class IRIs for option labels", () => {
    expect(localName("iedm:PassiveStandardIrradiation")).toBe(
      "Passive Standard Irradiation",
    );
    expect(localName("iedm:DUT")).toBe("DUT");
  });
});

describe("toUtcInstant", () => {
  it("appends seconds and the UTC marker", () => {
    expect(toUtcInstant("2018-03-30T12:00")).toBe("2018-03-30T12:00:00Z");
  });
});

describe("escapeHtml", () => {
  it("neutralizes markup", () => {
    expect(escapeHtml('<b>"x" & y</b>')).toBe("&lt;b&gt;&quot;x&quot; &amp; y&lt;/b&gt;");
  });
});
