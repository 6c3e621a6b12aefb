"""Published polynomials for the elimination showing alpha^4 lies in the
Hilbert class field, transcribed once.  CHECKSUM is the SHA-256 of the
entries joined as 'name=value' lines in insertion order."""

import hashlib

CONSTANTS = {
    "f": "(x^2-16*x+16)^3-j*(x^2-16*x)",
    "g": "(x^2-16*x+256)^3-k*(x^2-16*x)^2",
    "h": "(x^2-256*x+4096)^3-l*x^4*(16-x)",
    "q1": "(720-k)*x^4+(-23040+32*k)*x^3+(j+380160-256*k)*x^2+(-3133440-16*j)*x+16773120",
    "q2_multiplier": "(720-k)*x^2+(-11520+16*k)*x-48*k-j-161280",
    "q2": "(768*k^2-k^2*j+25067520*k+1488*k*j-161280*j+19906560000+j^2)*x^2"
          "+(-12288*k^2+16*k^2*j-401080320*k-23808*k*j+2580480*j-318504960000-16*j^2)*x"
          "+4096*k^2+799211520*k+2707292160000+16773120*j",
    "a2": "768*k^2-k^2*j+25067520*k+1488*k*j-161280*j+19906560000+j^2",
    "q3": "(-720+l)*x^5+(k-16*l+207360)*x^4+(-32*k-23040000)*x^3"
          "+(256*k+855244800)*x^2-12881756160*x+68702699520",
    "A1": "9331200000-226800*j+j^2+21945600*k+1488*k*j+752*k^2-k^2*j",
    "A2": "4095*j^2+6093360*k*j-663390000*j-4095*k^2*j+4095*j*l+102511008000*k"
          "+660960000*l+3144240*k^2+195120*k*l+k^2*l+81041472000000",
    "a3_scale": "-2^20",
    "Phi2": "k^3+1488*k^2*j-k^2*j^2-162000*k^2+8748000000*k+1488*j^2*k+40773375*k*j"
            "+j^3-162000*j^2+8748000000*j-157464000000000",
    "res1": "-2^32*(j-54000)*(j+3375)^2*(j^2+191025*j-121287375)^2",
    "A3": "-574852565088000000-1645137216000*j-4519800*j^2+2047*j^3",
    "H28": "j-16581375",
    "H60": "j^2-37018076625*j+153173312762625",
    "H7": "j+3375",
    "H15": "j^2+191025*j-121287375",
    "H12": "j-54000",
    "res2": "-2^85*A3*H28^2*H60^2*H7^6*H15^6",
    "r15": "t^4-17*t^3+33*t^2-4352*t+65536",
}


def checksum(constants=CONSTANTS):
    text = "\n".join(f"{k}={v}" for k, v in constants.items())
    return hashlib.sha256(text.encode()).hexdigest()


CHECKSUM = "80ba78ed2de418f7c50cd22854eff48e806a399eee5252e0cccee69a6ced2975"
